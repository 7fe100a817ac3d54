#pragma once

#include <optional>
#include <span>

#include "zdlab/linalg.hpp"

namespace zdlab {

// Finds x >= 0 with a x = b, or nullopt if none exists. Phase-one simplex on
// an exact rational tableau with Bland's rule, so it always terminates.
std::optional<RationalVector> find_nonnegative_solution(const RationalMatrix& a,
                                                        std::span<const Rational> b);

}  // namespace zdlab
