#pragma once

// Shared fixtures for the test suites: the two-agent message example,
// seeded random generators, and independent evaluators used as oracles.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "delkit/event_model.hpp"
#include "delkit/formula.hpp"
#include "delkit/kripke.hpp"
#include "delkit/parser.hpp"

namespace delkit::testing {

struct Wellington {
  EpistemicModel model;
  WorldIndex w, u;
  EventModelPtr e1, e2;
  EventEnv env;

  PointedModel at_w() const { return PointedModel{model, w}; }
  Formula parse(const std::string& text) const { return parse_formula(text, env); }
};

// Two-agent message example: M with worlds w, u and the event models
// E1 (message to agent 2) and E2 (reply to agent 1).
Wellington wellington();

struct Bounds {
  std::size_t max_worlds = 5;
  std::vector<std::string> agents{"a", "b"};
  std::vector<std::string> atoms{"p", "q", "r"};
  std::size_t max_events = 3;
  std::uint64_t max_size = 25;
  std::size_t max_dynamic_depth = 2;
  std::size_t max_unions = 1;
  // Share of pointed programs that are announcements.
  double announcement_rate = 0.2;
  double edge_rate = 0.35;
};

class Generator {
 public:
  Generator(std::uint64_t seed, Bounds bounds) : rng_(seed), b_(std::move(bounds)) {}

  EpistemicModel model();
  PointedModel pointed_model();
  EventModelPtr event_model(const std::string& name);
  Formula static_formula(std::uint64_t budget);
  // Fresh event models E0, E1 are drawn per formula and reachable through it.
  Formula formula();
  // Event models used by the last formula().
  const EventEnv& env() const { return env_; }

  std::mt19937_64& rng() { return rng_; }
  const Bounds& bounds() const { return b_; }

  std::size_t below(std::size_t n);
  bool chance(double p);

 private:
  Formula grow(std::uint64_t budget, std::size_t dyn, std::size_t& unions);
  Program program(std::size_t& unions);
  Program pointed();

  std::mt19937_64 rng_;
  Bounds b_;
  std::vector<EventModelPtr> pool_;
  EventEnv env_;
};

// Truth of [!ψ]φ by restricting the model to ψ-worlds and evaluating there;
// formulas may nest announcements but no other dynamic operator.
bool eval_by_restriction(const EpistemicModel& m, WorldIndex w, const Formula& f);

// Set-at-a-time evaluator for static formulas on models of at most 3 worlds,
// used to sweep every model of a small signature.
class SmallSweep {
 public:
  SmallSweep(const Formula& static_formula, std::vector<std::string> atoms,
             std::vector<std::string> agents);
  // True when the formula holds at every world of every model with 1..3
  // worlds. Stops at the first counterexample.
  bool valid_everywhere(std::uint64_t* models_checked = nullptr) const;

 private:
  struct Op {
    enum Kind { Atom, Top, Bot, Not, And, Box } kind;
    std::size_t a = 0, b = 0;  // child slots, or atom/agent index
  };
  std::size_t compile(const Formula& f);

  std::vector<Op> ops_;
  std::vector<std::string> atoms_, agents_;
};

// Product update built directly from pairs, independent of kripke.
std::optional<EpistemicModel> naive_product(const EpistemicModel& m, const EventModel& e,
                                            std::vector<std::pair<WorldIndex, EventIndex>>& origin);

}  // namespace delkit::testing
