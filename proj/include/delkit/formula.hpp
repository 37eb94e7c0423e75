#pragma once

// Formulas and event programs of the dynamic epistemic language.
//
// Both are immutable DAG nodes shared through `std::shared_ptr`; copying a
// Formula or Program is cheap and never deep-copies. Each node caches its
// size and a structural hash at construction time.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace delkit {

class EventModel;
using EventModelPtr = std::shared_ptr<const EventModel>;
using EventIndex = std::size_t;

enum class FormulaKind { Atom, Top, Bot, Not, And, Box, DynBox };
enum class ProgramKind { Pointed, Choice };

class Formula;

// π ::= E#e | π u π
class Program {
 public:
  static Program pointed(EventModelPtr model, EventIndex event);
  static Program choice(Program left, Program right);

  ProgramKind kind() const;
  bool is_pointed() const { return kind() == ProgramKind::Pointed; }

  // Pointed only.
  const EventModelPtr& model() const;
  EventIndex event() const;

  // Choice only.
  const Program& left() const;
  const Program& right() const;

  std::uint64_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  struct Node;
  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula box(std::string agent, Formula operand);
  static Formula dyn_box(Program program, Formula operand);

  // Derived forms, expanded into the primitive constructors.
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula left, Formula right);
  static Formula equivalence(Formula left, Formula right);
  static Formula diamond(std::string agent, Formula operand);
  static Formula dyn_diamond(Program program, Formula operand);

  // Left-nested conjunction; the empty conjunction is top.
  static Formula conjunction_of(const std::vector<Formula>& parts);
  static Formula disjunction_of(const std::vector<Formula>& parts);
  // Box or diamond repeated `times` times.
  static Formula boxes(const std::string& agent, std::size_t times, Formula operand);
  static Formula diamonds(const std::string& agent, std::size_t times, Formula operand);

  FormulaKind kind() const;
  bool is(FormulaKind k) const { return kind() == k; }

  // Atom name, or the agent of a Box.
  const std::string& name() const;
  // Operand of Not, Box and DynBox.
  const Formula& operand() const;
  // Children of And.
  const Formula& left() const;
  const Formula& right() const;
  // DynBox only.
  const Program& program() const;

  std::uint64_t size() const;
  std::size_t hash() const;
  // Node identity; equal ids imply structural equality but not conversely.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Atoms and agents occurring in a formula, including those inside the
// preconditions of embedded event models.
std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> agents_of(const Formula& f);
void collect_atoms(const EventModel& model, std::set<std::string>& out);
void collect_agents(const EventModel& model, std::set<std::string>& out);

// Event models reachable from a formula (program leaves and, transitively,
// models nested in their preconditions), in first-occurrence order.
std::vector<EventModelPtr> event_models_of(const Formula& f);

// Number of nested dynamic modalities along the deepest path, not counting
// those inside preconditions.
std::size_t dynamic_depth(const Formula& f);
// Number of choice nodes in all programs of the formula.
std::size_t choice_count(const Formula& f);
bool is_static(const Formula& f);

}  // namespace delkit
