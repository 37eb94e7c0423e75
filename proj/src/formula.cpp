#include "delkit/formula.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

#include "delkit/error.hpp"
#include "delkit/event_model.hpp"

namespace delkit {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---- Program ---------------------------------------------------------------

struct Program::Node {
  ProgramKind kind;
  EventModelPtr model;
  EventIndex event = 0;
  std::vector<Program> children;
  std::uint64_t size = 0;
  std::size_t hash = 0;
};

Program Program::pointed(EventModelPtr model, EventIndex event) {
  if (!model) throw ContractViolation("pointed program without event model");
  if (event >= model->event_count()) throw ContractViolation("designated event out of range");
  auto n = std::make_shared<Node>();
  n->kind = ProgramKind::Pointed;
  n->size = model->size();
  n->hash = mix(mix(std::hash<std::string>{}(model->name()), model->event_count()), event);
  n->model = std::move(model);
  n->event = event;
  return Program(std::move(n));
}

Program Program::choice(Program left, Program right) {
  auto n = std::make_shared<Node>();
  n->kind = ProgramKind::Choice;
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(0x51, left.hash()), right.hash());
  n->children = {std::move(left), std::move(right)};
  return Program(std::move(n));
}

ProgramKind Program::kind() const { return node_->kind; }
const EventModelPtr& Program::model() const { return node_->model; }
EventIndex Program::event() const { return node_->event; }
const Program& Program::left() const { return node_->children.at(0); }
const Program& Program::right() const { return node_->children.at(1); }
std::uint64_t Program::size() const { return node_->size; }
std::size_t Program::hash() const { return node_->hash; }

bool operator==(const Program& a, const Program& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash()) return false;
  if (a.is_pointed()) {
    return a.event() == b.event() && (a.model() == b.model() || *a.model() == *b.model());
  }
  return a.left() == b.left() && a.right() == b.right();
}

// ---- Formula ---------------------------------------------------------------

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Formula> children;
  std::vector<Program> program;  // zero or one
  std::uint64_t size = 1;
  std::size_t hash = 0;
};

Formula Formula::atom(std::string name) {
  if (name.empty()) throw ContractViolation("empty atom name");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->hash = mix(0xa7, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Top;
    n->hash = 0x70;
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::bot() {
  static const Formula b = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Bot;
    n->hash = 0xb0;
    return Formula(std::move(n));
  }();
  return b;
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->size = 1 + operand.size();
  n->hash = mix(0x4e, operand.hash());
  n->children = {std::move(operand)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(0x26, left.hash()), right.hash());
  n->children = {std::move(left), std::move(right)};
  return Formula(std::move(n));
}

Formula Formula::box(std::string agent, Formula operand) {
  if (agent.empty()) throw ContractViolation("empty agent name");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Box;
  n->size = 1 + operand.size();
  n->hash = mix(mix(0xb5, std::hash<std::string>{}(agent)), operand.hash());
  n->name = std::move(agent);
  n->children = {std::move(operand)};
  return Formula(std::move(n));
}

Formula Formula::dyn_box(Program program, Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::DynBox;
  n->size = 1 + program.size() + operand.size();
  n->hash = mix(mix(0xd7, program.hash()), operand.hash());
  n->children = {std::move(operand)};
  n->program = {std::move(program)};
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula left, Formula right) {
  return negation(conjunction(negation(std::move(left)), negation(std::move(right))));
}

Formula Formula::implication(Formula left, Formula right) {
  return negation(conjunction(std::move(left), negation(std::move(right))));
}

Formula Formula::equivalence(Formula left, Formula right) {
  return conjunction(implication(left, right), implication(right, left));
}

Formula Formula::diamond(std::string agent, Formula operand) {
  return negation(box(std::move(agent), negation(std::move(operand))));
}

Formula Formula::dyn_diamond(Program program, Formula operand) {
  return negation(dyn_box(std::move(program), negation(std::move(operand))));
}

Formula Formula::conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

Formula Formula::disjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disjunction(acc, parts[i]);
  return acc;
}

Formula Formula::boxes(const std::string& agent, std::size_t times, Formula operand) {
  for (std::size_t i = 0; i < times; ++i) operand = box(agent, std::move(operand));
  return operand;
}

Formula Formula::diamonds(const std::string& agent, std::size_t times, Formula operand) {
  for (std::size_t i = 0; i < times; ++i) operand = diamond(agent, std::move(operand));
  return operand;
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const Program& Formula::program() const { return node_->program.at(0); }
std::uint64_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Atom:
      return a.name() == b.name();
    case FormulaKind::Not:
      return a.operand() == b.operand();
    case FormulaKind::And:
      return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::Box:
      return a.name() == b.name() && a.operand() == b.operand();
    case FormulaKind::DynBox:
      return a.program() == b.program() && a.operand() == b.operand();
  }
  return false;
}

// ---- Queries ---------------------------------------------------------------

namespace {

struct Collector {
  std::set<std::string>* atoms = nullptr;
  std::set<std::string>* agents = nullptr;
  std::vector<EventModelPtr>* models = nullptr;
  std::unordered_set<const EventModel*> seen_models;
  std::unordered_set<const void*> seen_nodes;

  void model(const EventModelPtr& m) {
    if (!seen_models.insert(m.get()).second) return;
    if (agents) {
      for (const auto& [agent, pairs] : m->relations()) {
        if (!pairs.empty()) agents->insert(agent);
      }
    }
    for (EventIndex e = 0; e < m->event_count(); ++e) formula(m->precondition(e));
    if (models) models->push_back(m);
  }

  void program(const Program& p) {
    if (p.is_pointed()) {
      model(p.model());
    } else {
      program(p.left());
      program(p.right());
    }
  }

  void formula(const Formula& f) {
    if (!seen_nodes.insert(f.id()).second) return;
    switch (f.kind()) {
      case FormulaKind::Atom:
        if (atoms) atoms->insert(f.name());
        break;
      case FormulaKind::Top:
      case FormulaKind::Bot:
        break;
      case FormulaKind::Not:
        formula(f.operand());
        break;
      case FormulaKind::And:
        formula(f.left());
        formula(f.right());
        break;
      case FormulaKind::Box:
        if (agents) agents->insert(f.name());
        formula(f.operand());
        break;
      case FormulaKind::DynBox:
        program(f.program());
        formula(f.operand());
        break;
    }
  }
};

std::size_t program_choices(const Program& p) {
  if (p.is_pointed()) return 0;
  return 1 + program_choices(p.left()) + program_choices(p.right());
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  Collector c;
  c.atoms = &out;
  c.formula(f);
  return out;
}

std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> out;
  Collector c;
  c.agents = &out;
  c.formula(f);
  return out;
}

void collect_atoms(const EventModel& model, std::set<std::string>& out) {
  Collector c;
  c.atoms = &out;
  for (EventIndex e = 0; e < model.event_count(); ++e) c.formula(model.precondition(e));
}

void collect_agents(const EventModel& model, std::set<std::string>& out) {
  for (const auto& [agent, pairs] : model.relations()) {
    if (!pairs.empty()) out.insert(agent);
  }
  Collector c;
  c.agents = &out;
  for (EventIndex e = 0; e < model.event_count(); ++e) c.formula(model.precondition(e));
}

std::vector<EventModelPtr> event_models_of(const Formula& f) {
  std::vector<EventModelPtr> out;
  Collector c;
  c.models = &out;
  c.formula(f);
  return out;
}

std::size_t dynamic_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Box:
      return dynamic_depth(f.operand());
    case FormulaKind::And:
      return std::max(dynamic_depth(f.left()), dynamic_depth(f.right()));
    case FormulaKind::DynBox:
      return 1 + dynamic_depth(f.operand());
  }
  return 0;
}

std::size_t choice_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Box:
      return choice_count(f.operand());
    case FormulaKind::And:
      return choice_count(f.left()) + choice_count(f.right());
    case FormulaKind::DynBox:
      return program_choices(f.program()) + choice_count(f.operand());
  }
  return 0;
}

bool is_static(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Not:
    case FormulaKind::Box:
      return is_static(f.operand());
    case FormulaKind::And:
      return is_static(f.left()) && is_static(f.right());
    case FormulaKind::DynBox:
      return false;
  }
  return true;
}

}  // namespace delkit
