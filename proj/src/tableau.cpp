#include "delkit/tableau.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>

#include "delkit/error.hpp"
#include "delkit/parser.hpp"

namespace delkit::tableau {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t sequence_hash(const EventSequence& s) {
  std::size_t h = s.size();
  for (const auto& step : s) {
    h = mix(h, std::hash<std::string>{}(step.model->name()));
    h = mix(h, step.event);
  }
  return h;
}

bool is_literal(const Formula& f) {
  return f.is(FormulaKind::Atom) || (f.is(FormulaKind::Not) && f.operand().is(FormulaKind::Atom));
}

Formula complement(const Formula& literal) {
  return literal.is(FormulaKind::Not) ? literal.operand() : Formula::negation(literal);
}

EventSequence extend(const EventSequence& h, const EventModelPtr& model, EventIndex e) {
  EventSequence out = h;
  out.push_back(PointedEvent{model, e});
  return out;
}

EventSequence apply_tuple(const EventSequence& h, const std::vector<EventIndex>& tuple) {
  EventSequence out;
  out.reserve(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) out.push_back(PointedEvent{h[j].model, tuple[j]});
  return out;
}

// All (u1..ui) with wj R'_a uj; empty when some step has no successor.
std::vector<std::vector<EventIndex>> successor_tuples(const EventSequence& h,
                                                      const std::string& agent) {
  std::vector<std::vector<EventIndex>> out{{}};
  for (const auto& step : h) {
    auto next = step.model->successors(agent, step.event);
    std::vector<std::vector<EventIndex>> grown;
    grown.reserve(out.size() * next.size());
    for (const auto& prefix : out) {
      for (EventIndex u : next) {
        grown.push_back(prefix);
        grown.back().push_back(u);
      }
    }
    out = std::move(grown);
    if (out.empty()) break;
  }
  return out;
}

bool less_measure(const Term& a, const Term& b) { return term_measure(a) < term_measure(b); }

}  // namespace

Term Term::holds(Label label, EventSequence sequence, Formula formula) {
  Term t;
  t.kind = Kind::Holds;
  t.label = label;
  t.sequence = std::move(sequence);
  t.formula = std::move(formula);
  return t;
}

Term Term::exec(Label label, EventSequence sequence) {
  Term t;
  t.kind = Kind::Exec;
  t.label = label;
  t.sequence = std::move(sequence);
  return t;
}

Term Term::not_exec(Label label, EventSequence sequence) {
  Term t;
  t.kind = Kind::NotExec;
  t.label = label;
  t.sequence = std::move(sequence);
  return t;
}

Term Term::edge(Label from, std::string agent, Label to) {
  Term t;
  t.kind = Kind::Edge;
  t.label = from;
  t.agent = std::move(agent);
  t.target = to;
  return t;
}

Term Term::clash() { return Term{}; }

std::size_t Term::hash() const {
  std::size_t h = mix(static_cast<std::size_t>(kind), label);
  switch (kind) {
    case Kind::Holds:
      return mix(mix(h, sequence_hash(sequence)), formula->hash());
    case Kind::Exec:
    case Kind::NotExec:
      return mix(h, sequence_hash(sequence));
    case Kind::Edge:
      return mix(mix(h, std::hash<std::string>{}(agent)), target);
    case Kind::Clash:
      return h;
  }
  return h;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.label != b.label) return false;
  switch (a.kind) {
    case Term::Kind::Holds:
      return a.sequence == b.sequence && *a.formula == *b.formula;
    case Term::Kind::Exec:
    case Term::Kind::NotExec:
      return a.sequence == b.sequence;
    case Term::Kind::Edge:
      return a.agent == b.agent && a.target == b.target;
    case Term::Kind::Clash:
      return true;
  }
  return false;
}

std::string label_name(Label l) {
  if (l == kFreshLabel) return "s*";
  return "s" + std::to_string(l);
}

std::string to_string(const Term& t) {
  auto seq = [&] {
    if (t.sequence.empty()) return std::string("eps");
    std::string out;
    for (std::size_t j = 0; j < t.sequence.size(); ++j) {
      if (j) out += ';';
      out += to_string(Program::pointed(t.sequence[j].model, t.sequence[j].event));
    }
    return out;
  };
  switch (t.kind) {
    case Term::Kind::Holds:
      return "(" + label_name(t.label) + " " + seq() + " " + to_string(*t.formula) + ")";
    case Term::Kind::Exec:
      return "(" + label_name(t.label) + " " + seq() + " ok)";
    case Term::Kind::NotExec:
      return "(" + label_name(t.label) + " " + seq() + " nok)";
    case Term::Kind::Edge:
      return "(" + label_name(t.label) + " R_" + t.agent + " " + label_name(t.target) + ")";
    case Term::Kind::Clash:
      return "clash";
  }
  return "?";
}

std::pair<std::uint64_t, std::uint64_t> term_measure(const Term& t) {
  if (t.kind == Term::Kind::Edge || t.kind == Term::Kind::Clash) return {0, 0};
  std::uint64_t n = 1;
  for (const auto& step : t.sequence) n += step.model->size() + 1;
  if (t.kind != Term::Kind::Holds) return {n, 0};
  return {n + t.formula->size(), t.formula->size()};
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Bottom: return "bottom";
    case Rule::Constant: return "const";
    case Rule::ExecClash: return "clash";
    case Rule::EmptyNotExec: return "eps-nok";
    case Rule::And: return "and";
    case Rule::DoubleNeg: return "notnot";
    case Rule::LiftAtom: return "lift";
    case Rule::LiftNegAtom: return "lift-neg";
    case Rule::Executable: return "ok";
    case Rule::NotDyn: return "not-dyn";
    case Rule::Choice: return "choice";
    case Rule::NotAnd: return "not-and";
    case Rule::Dyn: return "dyn";
    case Rule::NotExecutable: return "nok";
    case Rule::NotChoice: return "not-choice";
    case Rule::Box: return "box";
    case Rule::NotBox: return "not-box";
  }
  return "?";
}

int rule_priority(Rule r) {
  switch (r) {
    case Rule::Bottom:
    case Rule::Constant:
    case Rule::ExecClash:
    case Rule::EmptyNotExec:
      return 0;
    case Rule::And:
    case Rule::DoubleNeg:
    case Rule::LiftAtom:
    case Rule::LiftNegAtom:
    case Rule::Executable:
    case Rule::NotDyn:
    case Rule::Choice:
      return 1;
    case Rule::NotAnd:
    case Rule::Dyn:
    case Rule::NotExecutable:
    case Rule::NotChoice:
      return 2;
    case Rule::Box:
      return 3;
    case Rule::NotBox:
      return 4;
  }
  return 4;
}

// ---- Branch ---------------------------------------------------------------

Branch::Branch(const Formula& root) { insert(Term::holds(0, {}, root)); }

Branch Branch::from_terms(const std::vector<Term>& terms) {
  Branch b;
  for (const auto& t : terms) b.insert(t);
  return b;
}

const std::vector<Label>& Branch::edges_from(Label from, const std::string& agent) const {
  static const std::vector<Label> none;
  auto it = edges_.find({from, agent});
  return it == edges_.end() ? none : it->second;
}

bool Branch::insert(Term t) {
  auto [it, fresh] = index_.emplace(t, terms_.size());
  if (!fresh) return false;
  std::size_t idx = terms_.size();
  terms_.push_back(std::move(t));
  const Term& term = terms_.back();
  if (term.kind != Term::Kind::Clash) max_label_ = std::max(max_label_, term.label);
  switch (term.kind) {
    case Term::Kind::Clash:
      closed_ = true;
      return true;
    case Term::Kind::Edge:
      max_label_ = std::max(max_label_, term.target);
      edges_[{term.label, term.agent}].push_back(term.target);
      break;
    case Term::Kind::Holds:
      if (term.formula->is(FormulaKind::Box)) {
        boxes_[{term.label, term.formula->name()}].push_back(idx);
      }
      break;
    default:
      break;
  }
  if (closed_) return true;
  std::vector<RuleInstance> found;
  trigger(idx, found);
  for (auto& inst : found) queue(std::move(inst));
  return true;
}

void Branch::queue(RuleInstance inst) {
  queues_[rule_priority(inst.rule)].push_back(std::move(inst));
}

std::optional<RuleInstance> Branch::pop_instance() {
  for (auto& q : queues_) {
    if (q.empty()) continue;
    RuleInstance inst = std::move(q.front());
    q.pop_front();
    return inst;
  }
  return std::nullopt;
}

// Instances in which term `index` takes part, paired only with terms that
// precede it, so each instance arises from exactly one of its premises.
void Branch::trigger(std::size_t index, std::vector<RuleInstance>& out) const {
  const Term& t = terms_[index];
  auto earlier = [&](const Term& partner) -> std::optional<std::size_t> {
    auto it = index_.find(partner);
    if (it == index_.end() || it->second >= index) return std::nullopt;
    return it->second;
  };
  auto one = [&](Rule r) { out.push_back(RuleInstance{r, {index}, {}}); };

  switch (t.kind) {
    case Term::Kind::Clash:
      return;
    case Term::Kind::Exec:
      if (auto other = earlier(Term::not_exec(t.label, t.sequence))) {
        out.push_back(RuleInstance{Rule::ExecClash, {*other, index}, {}});
      }
      if (!t.sequence.empty()) one(Rule::Executable);
      return;
    case Term::Kind::NotExec:
      if (t.sequence.empty()) {
        one(Rule::EmptyNotExec);
        return;
      }
      if (auto other = earlier(Term::exec(t.label, t.sequence))) {
        out.push_back(RuleInstance{Rule::ExecClash, {*other, index}, {}});
      }
      one(Rule::NotExecutable);
      return;
    case Term::Kind::Edge: {
      auto it = boxes_.find({t.label, t.agent});
      if (it == boxes_.end()) return;
      for (std::size_t box : it->second) {
        if (box >= index) continue;
        for (auto& tuple : successor_tuples(terms_[box].sequence, t.agent)) {
          out.push_back(RuleInstance{Rule::Box, {box, index}, std::move(tuple)});
        }
      }
      return;
    }
    case Term::Kind::Holds:
      break;
  }

  const Formula& f = *t.formula;
  if (is_literal(f)) {
    if (auto other = earlier(Term::holds(t.label, t.sequence, complement(f)))) {
      out.push_back(RuleInstance{Rule::Bottom, {*other, index}, {}});
    }
    if (!t.sequence.empty()) one(f.is(FormulaKind::Atom) ? Rule::LiftAtom : Rule::LiftNegAtom);
    return;
  }
  switch (f.kind()) {
    case FormulaKind::Bot:
      one(Rule::Constant);
      return;
    case FormulaKind::Top:
      return;
    case FormulaKind::And:
      one(Rule::And);
      return;
    case FormulaKind::Box: {
      auto it = edges_.find({t.label, f.name()});
      if (it == edges_.end()) return;
      auto tuples = successor_tuples(t.sequence, f.name());
      for (Label target : it->second) {
        auto e = earlier(Term::edge(t.label, f.name(), target));
        if (!e) continue;
        for (const auto& tuple : tuples) out.push_back(RuleInstance{Rule::Box, {index, *e}, tuple});
      }
      return;
    }
    case FormulaKind::DynBox:
      one(f.program().is_pointed() ? Rule::Dyn : Rule::Choice);
      return;
    case FormulaKind::Not:
      break;
    case FormulaKind::Atom:
      return;
  }
  const Formula& g = f.operand();
  switch (g.kind()) {
    case FormulaKind::Top:
      one(Rule::Constant);
      return;
    case FormulaKind::Bot:
    case FormulaKind::Atom:
      return;
    case FormulaKind::Not:
      one(Rule::DoubleNeg);
      return;
    case FormulaKind::And:
      one(Rule::NotAnd);
      return;
    case FormulaKind::Box:
      one(Rule::NotBox);
      return;
    case FormulaKind::DynBox:
      one(g.program().is_pointed() ? Rule::NotDyn : Rule::NotChoice);
      return;
  }
}

// ---- rules ----------------------------------------------------------------

std::vector<std::vector<Term>> denominators(const Branch& b, const RuleInstance& inst) {
  const Term& t = b.terms().at(inst.premises.at(0));
  const Label s = t.label;
  const EventSequence& h = t.sequence;
  switch (inst.rule) {
    case Rule::Bottom:
    case Rule::Constant:
    case Rule::ExecClash:
    case Rule::EmptyNotExec:
      return {{Term::clash()}};
    case Rule::LiftAtom:
    case Rule::LiftNegAtom:
      return {{Term::holds(s, {}, *t.formula)}};
    case Rule::Executable: {
      EventSequence prefix(h.begin(), h.end() - 1);
      const Formula& pre = h.back().precondition();
      return {{Term::holds(s, prefix, pre), Term::exec(s, prefix)}};
    }
    case Rule::NotExecutable: {
      EventSequence prefix(h.begin(), h.end() - 1);
      Formula not_pre = Formula::negation(h.back().precondition());
      return {{Term::exec(s, prefix), Term::holds(s, prefix, not_pre)},
              {Term::not_exec(s, prefix)}};
    }
    case Rule::Box: {
      const Term& edge = b.terms().at(inst.premises.at(1));
      EventSequence next = apply_tuple(h, inst.tuple);
      return {{Term::not_exec(edge.target, next)},
              {Term::exec(edge.target, next), Term::holds(edge.target, next, t.formula->operand())}};
    }
    default:
      break;
  }
  const Formula& f = *t.formula;
  switch (inst.rule) {
    case Rule::And:
      return {{Term::holds(s, h, f.left()), Term::holds(s, h, f.right())}};
    case Rule::Dyn: {
      EventSequence next = extend(h, f.program().model(), f.program().event());
      return {{Term::not_exec(s, next)}, {Term::exec(s, next), Term::holds(s, next, f.operand())}};
    }
    case Rule::Choice: {
      const Program& p = f.program();
      return {{Term::holds(s, h, Formula::dyn_box(p.left(), f.operand())),
               Term::holds(s, h, Formula::dyn_box(p.right(), f.operand()))}};
    }
    default:
      break;
  }
  const Formula& g = f.operand();
  switch (inst.rule) {
    case Rule::DoubleNeg:
      return {{Term::holds(s, h, g.operand())}};
    case Rule::NotAnd:
      return {{Term::holds(s, h, Formula::negation(g.left()))},
              {Term::holds(s, h, Formula::negation(g.right()))}};
    case Rule::NotDyn: {
      EventSequence next = extend(h, g.program().model(), g.program().event());
      return {{Term::exec(s, next), Term::holds(s, next, Formula::negation(g.operand()))}};
    }
    case Rule::NotChoice: {
      const Program& p = g.program();
      return {{Term::holds(s, h, Formula::negation(Formula::dyn_box(p.left(), g.operand())))},
              {Term::holds(s, h, Formula::negation(Formula::dyn_box(p.right(), g.operand())))}};
    }
    case Rule::NotBox: {
      std::vector<std::vector<Term>> out;
      Formula body = Formula::negation(g.operand());
      for (const auto& tuple : successor_tuples(h, g.name())) {
        EventSequence next = apply_tuple(h, tuple);
        out.push_back({Term::edge(s, g.name(), kFreshLabel), Term::exec(kFreshLabel, next),
                       Term::holds(kFreshLabel, next, body)});
      }
      return out;
    }
    default:
      break;
  }
  throw ContractViolation("malformed rule instance");
}

namespace {

Term substitute(Term t, Label fresh) {
  if (t.label == kFreshLabel) t.label = fresh;
  if (t.kind == Term::Kind::Edge && t.target == kFreshLabel) t.target = fresh;
  return t;
}

bool uses_fresh(const std::vector<Term>& den) {
  for (const auto& t : den) {
    if (t.label == kFreshLabel || (t.kind == Term::Kind::Edge && t.target == kFreshLabel)) {
      return true;
    }
  }
  return false;
}

bool denominator_present(const Branch& b, const RuleInstance& inst,
                         const std::vector<std::vector<Term>>& dens) {
  for (const auto& den : dens) {
    if (!uses_fresh(den)) {
      if (std::all_of(den.begin(), den.end(), [&](const Term& t) { return b.contains(t); })) {
        return true;
      }
      continue;
    }
    // An existing successor already witnesses this tuple.
    const Term& principal = b.terms()[inst.premises[0]];
    for (Label l : b.edges_from(principal.label, principal.formula->operand().name())) {
      if (std::all_of(den.begin(), den.end(),
                      [&](const Term& t) { return b.contains(substitute(t, l)); })) {
        return true;
      }
    }
  }
  return false;
}

// The denominator contradicts b outright, so choosing it can only close.
bool closes_at_once(const Branch& b, const std::vector<Term>& den) {
  auto has = [&](const Term& t) {
    if (b.contains(t)) return true;
    return std::find(den.begin(), den.end(), t) != den.end();
  };
  for (const auto& t : den) {
    switch (t.kind) {
      case Term::Kind::Clash:
        return true;
      case Term::Kind::NotExec:
        if (t.sequence.empty() || has(Term::exec(t.label, t.sequence))) return true;
        break;
      case Term::Kind::Exec:
        if (has(Term::not_exec(t.label, t.sequence))) return true;
        break;
      case Term::Kind::Holds: {
        const Formula& f = *t.formula;
        if (f.is(FormulaKind::Bot)) return true;
        if (f.is(FormulaKind::Not) && f.operand().is(FormulaKind::Top)) return true;
        if (is_literal(f)) {
          Formula c = complement(f);
          if (has(Term::holds(t.label, t.sequence, c)) || has(Term::holds(t.label, {}, c))) {
            return true;
          }
        }
        break;
      }
      case Term::Kind::Edge:
        break;
    }
  }
  return false;
}

void apply(Branch& b, const std::vector<Term>& den, Label fresh) {
  for (const auto& t : den) b.insert(substitute(t, fresh));
}

PointedModel read_model(const Branch& b) {
  std::set<Label> labels{0};
  EpistemicModel::Relations rel;
  EpistemicModel::Valuation val;
  for (const auto& t : b.terms()) {
    if (t.kind == Term::Kind::Clash) continue;
    labels.insert(t.label);
    if (t.kind == Term::Kind::Edge) labels.insert(t.target);
  }
  std::vector<Label> order(labels.begin(), labels.end());
  auto pos = [&](Label l) {
    return static_cast<WorldIndex>(std::lower_bound(order.begin(), order.end(), l) - order.begin());
  };
  std::vector<std::string> names;
  for (Label l : order) names.push_back(label_name(l));
  for (const auto& t : b.terms()) {
    if (t.kind == Term::Kind::Edge) {
      rel[t.agent].emplace_back(pos(t.label), pos(t.target));
    } else if (t.kind == Term::Kind::Holds && t.sequence.empty() &&
               t.formula->is(FormulaKind::Atom)) {
      val[t.formula->name()].push_back(pos(t.label));
    }
  }
  return PointedModel{EpistemicModel(std::move(names), std::move(rel), std::move(val)), pos(0)};
}

}  // namespace

std::vector<RuleInstance> applicable_rules(const Branch& b) {
  std::vector<RuleInstance> all;
  for (std::size_t i = 0; i < b.terms_.size(); ++i) b.trigger(i, all);
  std::vector<RuleInstance> out;
  for (auto& inst : all) {
    if (inst.rule <= Rule::EmptyNotExec && b.closed()) continue;
    if (!denominator_present(b, inst, denominators(b, inst))) out.push_back(std::move(inst));
  }
  std::stable_sort(out.begin(), out.end(), [](const RuleInstance& x, const RuleInstance& y) {
    return rule_priority(x.rule) < rule_priority(y.rule);
  });
  return out;
}

std::vector<Branch> expand(const Branch& b, const RuleInstance& inst) {
  for (std::size_t p : inst.premises) {
    if (p >= b.terms().size()) throw ContractViolation("rule premise out of range");
  }
  auto candidates = applicable_rules(b);
  bool listed = std::any_of(candidates.begin(), candidates.end(), [&](const RuleInstance& c) {
    return c.rule == inst.rule && c.premises == inst.premises && c.tuple == inst.tuple;
  });
  if (!listed) {
    throw ContractViolation(std::string("rule '") + rule_name(inst.rule) + "' is not applicable");
  }
  auto dens = denominators(b, inst);
  std::vector<Branch> out;
  if (dens.empty()) {
    out.push_back(b);
    out.back().insert(Term::clash());
    return out;
  }
  Label fresh = b.max_label() + 1;
  for (const auto& den : dens) {
    out.push_back(b);
    apply(out.back(), den, fresh++);
  }
  return out;
}

PointedModel extract_model(const Branch& b) {
  if (b.closed()) throw ContractViolation("cannot extract a model from a closed branch");
  if (!applicable_rules(b).empty()) throw ContractViolation("branch is not saturated");
  return read_model(b);
}

// ---- search ---------------------------------------------------------------

namespace {

class Search {
 public:
  explicit Search(const Options& options)
      : options_(options), start_(std::chrono::steady_clock::now()) {}

  SatResult run(const Formula& root) {
    SatResult result;
    std::vector<std::pair<Branch, std::uint64_t>> stack;
    stack.emplace_back(Branch(root), next_branch_++);
    ++stats_.branches;
    while (!stack.empty()) {
      auto [b, id] = std::move(stack.back());
      stack.pop_back();
      if (!explore(b, id, stack)) {
        result.verdict = Verdict::ResourceLimit;
        result.stats = finish();
        return result;
      }
      if (!b.closed()) {
        result.verdict = Verdict::Satisfiable;
        result.model = read_model(b);
        result.verified = !options_.verify || eval(*result.model, root);
        result.open_branch = std::move(b);
        result.stats = finish();
        return result;
      }
      ++stats_.closed_branches;
    }
    result.verdict = Verdict::Unsatisfiable;
    result.stats = finish();
    return result;
  }

 private:
  // Runs b until it closes or saturates; false when a budget runs out.
  bool explore(Branch& b, std::uint64_t id, std::vector<std::pair<Branch, std::uint64_t>>& stack) {
    while (!b.closed()) {
      auto inst = b.pop_instance();
      if (!inst) return true;
      auto dens = denominators(b, *inst);
      if (denominator_present(b, *inst, dens)) continue;
      if (++stats_.rule_applications > options_.max_rule_applications) return false;
      if ((stats_.rule_applications & 0xff) == 0 &&
          std::chrono::steady_clock::now() - start_ > options_.time_limit) {
        return false;
      }
      if (options_.debug) check_measure(b, *inst, dens);
      if (options_.dump) dump(b, id, *inst, dens);

      std::vector<std::size_t> live;
      for (std::size_t k = 0; k < dens.size(); ++k) {
        if (!closes_at_once(b, dens[k])) live.push_back(k);
      }
      if (live.empty()) {
        b.insert(Term::clash());
        break;
      }
      for (std::size_t k = live.size(); k-- > 1;) {
        Branch child = b;
        apply(child, dens[live[k]], take_label(dens[live[k]]));
        stack.emplace_back(std::move(child), next_branch_++);
        ++stats_.branches;
      }
      apply(b, dens[live[0]], take_label(dens[live[0]]));
    }
    return true;
  }

  void check_measure(const Branch& b, const RuleInstance& inst,
                     const std::vector<std::vector<Term>>& dens) {
    const Term& principal = b.terms()[inst.premises[0]];
    for (const auto& den : dens) {
      for (const auto& t : den) {
        ++stats_.measure_checks;
        if (!less_measure(t, principal)) {
          throw InvariantViolation(std::string("tableau measure did not decrease in rule '") +
                                   rule_name(inst.rule) + "': " + to_string(principal) + " -> " +
                                   to_string(t));
        }
      }
    }
  }

  void dump(const Branch& b, std::uint64_t id, const RuleInstance& inst,
            const std::vector<std::vector<Term>>& dens) {
    std::ostream& os = *options_.dump;
    os << 'b' << id << ' ' << rule_name(inst.rule);
    for (std::size_t p : inst.premises) os << ' ' << to_string(b.terms()[p]);
    os << " =>";
    if (dens.empty()) os << " clash";
    for (std::size_t k = 0; k < dens.size(); ++k) {
      os << (k ? " |" : "");
      for (std::size_t j = 0; j < dens[k].size(); ++j) {
        os << (j ? ", " : " ") << to_string(substitute(dens[k][j], next_label_));
      }
    }
    os << '\n';
  }

  Label take_label(const std::vector<Term>& den) {
    return uses_fresh(den) ? next_label_++ : kFreshLabel;
  }

  Stats finish() {
    stats_.labels = next_label_;
    return stats_;
  }

  const Options& options_;
  std::chrono::steady_clock::time_point start_;
  Stats stats_;
  Label next_label_ = 1;
  std::uint64_t next_branch_ = 0;
};

}  // namespace

SatResult is_satisfiable(const Formula& f, const Options& options) {
  return Search(options).run(f);
}

ValidityResult is_valid(const Formula& f, const Options& options) {
  SatResult sat = is_satisfiable(Formula::negation(f), options);
  ValidityResult out;
  out.stats = sat.stats;
  switch (sat.verdict) {
    case Verdict::Satisfiable:
      out.verdict = ValidityResult::Verdict::Invalid;
      out.countermodel = std::move(sat.model);
      break;
    case Verdict::Unsatisfiable:
      out.verdict = ValidityResult::Verdict::Valid;
      break;
    case Verdict::ResourceLimit:
      out.verdict = ValidityResult::Verdict::ResourceLimit;
      break;
  }
  return out;
}

}  // namespace delkit::tableau
