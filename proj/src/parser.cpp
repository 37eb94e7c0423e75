#include "delkit/parser.hpp"

#include <cctype>
#include <memory>
#include <vector>

#include "delkit/error.hpp"

namespace delkit {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Program syntax before desugaring; sequences have no AST counterpart.
struct ProgramSyntax {
  enum class Kind { Leaf, Choice, Sequence } kind = Kind::Leaf;
  std::shared_ptr<Program> leaf;
  std::vector<ProgramSyntax> children;

  bool sequence_free() const {
    if (kind == Kind::Sequence) return false;
    for (const auto& c : children) {
      if (!c.sequence_free()) return false;
    }
    return true;
  }

  Program to_program() const {
    if (kind == Kind::Leaf) return *leaf;
    return Program::choice(children[0].to_program(), children[1].to_program());
  }
};

// [P] F, with [π;γ]F = [π][γ]F. A choice containing a sequence is split into
// the conjunction of its branches.
Formula box_over(const ProgramSyntax& p, Formula body) {
  switch (p.kind) {
    case ProgramSyntax::Kind::Leaf:
      return Formula::dyn_box(*p.leaf, std::move(body));
    case ProgramSyntax::Kind::Sequence:
      return box_over(p.children[0], box_over(p.children[1], std::move(body)));
    case ProgramSyntax::Kind::Choice:
      if (p.sequence_free()) return Formula::dyn_box(p.to_program(), std::move(body));
      return Formula::conjunction(box_over(p.children[0], body), box_over(p.children[1], body));
  }
  throw ContractViolation("unreachable program kind");
}

class Parser {
 public:
  Parser(std::string_view text, const EventEnv& env) : text_(text), env_(env) {}

  Formula parse() {
    Formula f = equivalence();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view token) {
    skip();
    return text_.substr(pos_, token.size()) == token;
  }

  bool accept(std::string_view token) {
    if (!peek(token)) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Identifier at the cursor without consuming it.
  std::string_view peek_identifier() {
    skip();
    std::size_t end = pos_;
    while (end < text_.size() && is_ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  bool followed_by_brace(std::size_t from) const {
    while (from < text_.size() && std::isspace(static_cast<unsigned char>(text_[from]))) ++from;
    return from < text_.size() && text_[from] == '{';
  }

  std::string braced_agent() {
    expect("{");
    std::string agent = identifier();
    expect("}");
    return agent;
  }

  Formula equivalence() {
    Formula left = implication();
    while (accept("<->")) {
      Formula right = implication();
      left = Formula::equivalence(left, right);
    }
    return left;
  }

  Formula implication() {
    Formula left = disjunction();
    if (accept("->")) return Formula::implication(left, implication());
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    while (accept("|")) left = Formula::disjunction(left, conjunction());
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    while (accept("&")) left = Formula::conjunction(left, unary());
    return left;
  }

  Formula unary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("~")) return Formula::negation(unary());
    if (accept("(")) {
      Formula inner = equivalence();
      expect(")");
      return inner;
    }
    if (accept("[")) {
      ProgramSyntax p = choice();
      expect("]");
      return box_over(p, unary());
    }
    if (peek("<->")) fail("unexpected '<->'");
    if (accept("<")) {
      std::string_view id = peek_identifier();
      if (id == "B" && followed_by_brace(pos_ + 1)) {
        ++pos_;
        std::string agent = braced_agent();
        expect(">");
        return Formula::diamond(agent, unary());
      }
      ProgramSyntax p = choice();
      expect(">");
      return Formula::negation(box_over(p, Formula::negation(unary())));
    }
    std::size_t start = pos_;
    std::string id = identifier();
    if (id == "B" && followed_by_brace(pos_)) {
      std::string agent = braced_agent();
      return Formula::box(agent, unary());
    }
    if (id == "top") return Formula::top();
    if (id == "bot") return Formula::bot();
    if (std::isdigit(static_cast<unsigned char>(id.front()))) {
      pos_ = start;
      fail("atom must not start with a digit");
    }
    return Formula::atom(id);
  }

  ProgramSyntax choice() {
    ProgramSyntax left = sequence();
    while (peek_identifier() == "u") {
      pos_ += 1;
      ProgramSyntax node;
      node.kind = ProgramSyntax::Kind::Choice;
      node.children = {std::move(left), sequence()};
      left = std::move(node);
    }
    return left;
  }

  ProgramSyntax sequence() {
    ProgramSyntax left = primary_program();
    while (accept(";")) {
      ProgramSyntax node;
      node.kind = ProgramSyntax::Kind::Sequence;
      node.children = {std::move(left), primary_program()};
      left = std::move(node);
    }
    return left;
  }

  ProgramSyntax primary_program() {
    if (accept("(")) {
      ProgramSyntax inner = choice();
      expect(")");
      return inner;
    }
    ProgramSyntax leaf;
    if (accept("!")) {
      Formula pre = equivalence();
      leaf.leaf = std::make_shared<Program>(Program::pointed(EventModel::announcement(pre), 0));
      return leaf;
    }
    skip();
    std::size_t name_pos = pos_;
    std::string name = identifier();
    auto it = env_.find(name);
    if (it == env_.end()) {
      pos_ = name_pos;
      fail("unbound event model '" + name + "'");
    }
    expect("#");
    skip();
    std::size_t event_pos = pos_;
    std::string event = identifier();
    auto e = it->second->find_event(event);
    if (!e) {
      pos_ = event_pos;
      fail("event model '" + name + "' has no event '" + event + "'");
    }
    leaf.leaf = std::make_shared<Program>(Program::pointed(it->second, *e));
    return leaf;
  }

  std::string_view text_;
  const EventEnv& env_;
  std::size_t pos_ = 0;
};

void print(const Formula& f, std::string& out);

void print(const Program& p, std::string& out) {
  if (p.is_pointed()) {
    if (p.model()->is_announcement()) {
      out += '!';
      print(p.model()->precondition(p.event()), out);
    } else {
      out += p.model()->name();
      out += '#';
      out += p.model()->event_name(p.event());
    }
    return;
  }
  print(p.left(), out);
  out += " u ";
  if (p.right().is_pointed()) {
    print(p.right(), out);
  } else {
    out += '(';
    print(p.right(), out);
    out += ')';
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.name();
      return;
    case FormulaKind::Top:
      out += "top";
      return;
    case FormulaKind::Bot:
      out += "bot";
      return;
    case FormulaKind::Not:
      out += '~';
      print(f.operand(), out);
      return;
    case FormulaKind::And:
      out += '(';
      print(f.left(), out);
      out += " & ";
      print(f.right(), out);
      out += ')';
      return;
    case FormulaKind::Box:
      out += "B{";
      out += f.name();
      out += "} ";
      print(f.operand(), out);
      return;
    case FormulaKind::DynBox:
      out += '[';
      print(f.program(), out);
      out += "] ";
      print(f.operand(), out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const EventEnv& env) {
  return Parser(text, env).parse();
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const Program& p) {
  std::string out;
  print(p, out);
  return out;
}

}  // namespace delkit
