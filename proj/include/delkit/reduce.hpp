#pragma once

#include <cstdint>

#include "delkit/formula.hpp"

namespace delkit {

// Eliminates every dynamic modality with the reduction axioms, innermost
// first. Preconditions are translated before use. The result contains no
// DynBox and is equivalent to the input on every pointed model.
Formula translate(const Formula& f);

struct TranslationReport {
  Formula input;
  Formula output;
  std::uint64_t input_size = 0;
  std::uint64_t output_size = 0;
};

TranslationReport translate_with_report(const Formula& f);

// Constant folding and double-negation removal; preserves equivalence.
Formula simplify(const Formula& f);

}  // namespace delkit
