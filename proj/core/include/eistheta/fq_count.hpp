#pragma once

#include "eistheta/half_integral.hpp"

#include <vector>

namespace eistheta::local_forms {

// Exact counts over F_q of matrices X in M_{m,n}(F_q) satisfying the mod-q
// shadow of S[X] = T:
//   x_i' (2S) x_j = (2T)_ij (mod q)   for i < j
//   x_j' S x_j    = T_jj    (mod q)   on the diagonal (integer values)
// For odd q the diagonal condition is equivalent to x'(2S)x = (2T)_jj; at
// q = 2 it is a genuine quadratic-form condition and Witt theory in
// characteristic 2 (symplectic pairing + Arf invariant) drives the count.
//
// S must be unimodular at q (det(2S) a q-adic unit).  These counts feed the
// primitive-decomposition evaluation of local densities; a brute-force
// reference lives in the test suite.

bool unimodular_at(const HalfIntSym& S, long q);

// #\{X in M_{m,n}(F_q) : Gram conditions\}
Int fq_gram_count(const HalfIntSym& S, const HalfIntSym& T, long q);

// Same but restricted to primitive X (rank n over F_q), via subspace Moebius
// inversion over the radical of T mod q.
Int fq_gram_count_primitive(const HalfIntSym& S, const HalfIntSym& T, long q);

}  // namespace eistheta::local_forms
