#pragma once

// Recursive model checker that evaluates formulas against M ⊗ E1 ⊗ ... ⊗ Ei
// by carrying the event history (E1,e1)...(Ei,ei) instead of building the
// product. It never calls product_update, so product_worlds_built() does not
// move while it runs.

#include <cstdint>
#include <iosfwd>

#include "delkit/event_model.hpp"
#include "delkit/kripke.hpp"

namespace delkit {

struct MCheckOptions {
  // Validates the history-executability precondition at every call and
  // asserts that the input measure strictly decreases along each recursive
  // call; failures throw InvariantViolation / ContractViolation.
  bool debug = false;
  // Maximum number of nested calls; exceeding it throws BudgetExceeded.
  std::size_t depth_limit = 100'000;
  // One line per call: "<depth> <measure> <case>".
  std::ostream* trace = nullptr;
};

struct MCheckStats {
  std::uint64_t calls = 0;
  std::size_t peak_depth = 0;
  // Number of measure-descent assertions evaluated (debug mode only).
  std::uint64_t measure_checks = 0;
};

// Truth of `f` at (w, e1, ..., ei) in M ⊗ E1 ⊗ ... ⊗ Ei.
// Precondition: the history is executable at w.
bool m_check(const EpistemicModel& m, WorldIndex w, const EventSequence& history,
             const Formula& f, const MCheckOptions& options = {}, MCheckStats* stats = nullptr);

inline bool model_check(const PointedModel& pm, const Formula& f,
                        const MCheckOptions& options = {}, MCheckStats* stats = nullptr) {
  return m_check(pm.model, pm.point, {}, f, options, stats);
}

// |M| + sum |Ei| + |f|, with |M| counting valuation entries only for atoms
// occurring in f or in the history's event models.
std::uint64_t input_measure(const EpistemicModel& m, const EventSequence& history,
                            const Formula& f);

}  // namespace delkit
