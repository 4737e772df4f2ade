#pragma once

#include "eistheta/rational.hpp"

namespace eistheta::arith {

// Exact Bernoulli number B_k.  Convention: B_1 = -1/2; only even indices are
// consumed by the Eisenstein formulas, so the sign choice at k = 1 is
// recorded here but immaterial downstream.
Rat bernoulli(unsigned long k);

// Bernoulli polynomial value B_k(x), exact.
Rat bernoulli_poly(unsigned long k, const Rat& x);

// Precompute even Bernoulli numbers up to index k (amortizes table growth
// before parallel sections).
void bernoulli_reserve(unsigned long k);

}  // namespace eistheta::arith
