#pragma once

// Labelled tableau for satisfiability of dynamic epistemic formulas.
//
// Terms are (σ Σ φ) "φ holds at σ after the executable sequence Σ",
// (σ Σ ✓) / (σ Σ ⊗) "Σ is / is not executable at σ", (σ R_a σ') and the
// clash ⊥. The search is depth first over denominator choices. A saturated
// clash-free branch yields a pointed model of the root formula.

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "delkit/event_model.hpp"
#include "delkit/formula.hpp"
#include "delkit/kripke.hpp"

namespace delkit::tableau {

using Label = std::uint32_t;

struct Term {
  enum class Kind : std::uint8_t { Holds, Exec, NotExec, Edge, Clash };

  Kind kind = Kind::Clash;
  Label label = 0;
  EventSequence sequence;          // Holds, Exec, NotExec
  std::optional<Formula> formula;  // Holds
  std::string agent;               // Edge
  Label target = 0;                // Edge

  static Term holds(Label label, EventSequence sequence, Formula formula);
  static Term exec(Label label, EventSequence sequence);
  static Term not_exec(Label label, EventSequence sequence);
  static Term edge(Label from, std::string agent, Label to);
  static Term clash();

  std::size_t hash() const;
  friend bool operator==(const Term& a, const Term& b);
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

std::string to_string(const Term& t);
std::string label_name(Label l);

// Size of a term: 1 + sum over Σ of (|E| + 1) + |φ|. Pairs with the formula
// size so dynamic-modality rules, which move |E| + 1 from the formula into
// the sequence, still descend lexicographically.
std::pair<std::uint64_t, std::uint64_t> term_measure(const Term& t);

enum class Rule : std::uint8_t {
  // contradictions
  Bottom,        // (σ Σ p), (σ Σ ¬p)
  Constant,      // (σ Σ ⊥) or (σ Σ ¬⊤)
  ExecClash,     // (σ Σ ✓), (σ Σ ⊗)
  EmptyNotExec,  // (σ ε ⊗)
  // linear
  And,
  DoubleNeg,
  LiftAtom,
  LiftNegAtom,
  Executable,  // (σ Σ;E,e ✓)
  NotDyn,      // ¬[E,e]
  Choice,      // [π ∪ γ]
  // branching
  NotAnd,
  Dyn,            // [E,e]
  NotExecutable,  // (σ Σ;E,e ⊗)
  NotChoice,      // ¬[π ∪ γ]
  // modal
  Box,     // B_a against one edge and one successor event tuple
  NotBox,  // ¬B_a, one denominator per successor event tuple
};

const char* rule_name(Rule r);
int rule_priority(Rule r);

struct RuleInstance {
  Rule rule = Rule::Bottom;
  // Indices into Branch::terms(); the principal term comes first. Box lists
  // the B_a term then the edge.
  std::vector<std::size_t> premises;
  // Box: successor events, one per step of the principal term's sequence.
  std::vector<EventIndex> tuple;
};

// Label standing for the fresh world a NotBox denominator introduces.
inline constexpr Label kFreshLabel = ~Label{0};

class Branch {
 public:
  Branch() = default;
  // {(s0 ε root)}
  explicit Branch(const Formula& root);
  static Branch from_terms(const std::vector<Term>& terms);

  bool closed() const { return closed_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool contains(const Term& t) const { return index_.count(t) != 0; }
  // Adds a term; returns false when it was already present. Queues every
  // rule instance the new term takes part in.
  bool insert(Term t);

  const std::vector<Label>& edges_from(Label from, const std::string& agent) const;
  Label max_label() const { return max_label_; }

  // Next queued instance by rule priority, FIFO within a priority.
  std::optional<RuleInstance> pop_instance();

 private:
  friend std::vector<RuleInstance> applicable_rules(const Branch& b);

  void trigger(std::size_t index, std::vector<RuleInstance>& out) const;
  void queue(RuleInstance inst);

  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::map<std::pair<Label, std::string>, std::vector<Label>> edges_;
  std::map<std::pair<Label, std::string>, std::vector<std::size_t>> boxes_;
  std::array<std::deque<RuleInstance>, 5> queues_;
  Label max_label_ = 0;
  bool closed_ = false;
};

// Every instance whose premises are in b and none of whose denominators is
// already contained in b, in priority order.
std::vector<RuleInstance> applicable_rules(const Branch& b);

// Denominators of an instance; NotBox denominators use kFreshLabel. An empty
// result means the rule closes the branch.
std::vector<std::vector<Term>> denominators(const Branch& b, const RuleInstance& inst);

// One branch per denominator. Throws ContractViolation if inst is not
// applicable to b.
std::vector<Branch> expand(const Branch& b, const RuleInstance& inst);

// Requires a saturated, clash-free branch.
PointedModel extract_model(const Branch& b);

struct Options {
  std::uint64_t max_rule_applications = 1'000'000;
  std::chrono::milliseconds time_limit{60'000};
  // Asserts term_measure descent at every rule application.
  bool debug = false;
  // Evaluates the root formula on the extracted model.
  bool verify = true;
  std::ostream* dump = nullptr;
};

struct Stats {
  std::uint64_t rule_applications = 0;
  std::uint64_t branches = 0;
  std::uint64_t closed_branches = 0;
  std::uint64_t measure_checks = 0;
  std::uint32_t labels = 0;
};

enum class Verdict { Satisfiable, Unsatisfiable, ResourceLimit };

struct SatResult {
  Verdict verdict = Verdict::ResourceLimit;
  std::optional<PointedModel> model;
  // The extracted model satisfies the root formula under eval.
  bool verified = false;
  std::optional<Branch> open_branch;
  Stats stats;
};

SatResult is_satisfiable(const Formula& f, const Options& options = {});

struct ValidityResult {
  enum class Verdict { Valid, Invalid, ResourceLimit } verdict = Verdict::ResourceLimit;
  std::optional<PointedModel> countermodel;
  Stats stats;
};

ValidityResult is_valid(const Formula& f, const Options& options = {});

}  // namespace delkit::tableau
