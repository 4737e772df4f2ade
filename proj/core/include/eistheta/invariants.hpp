#pragma once

#include "eistheta/half_integral.hpp"

namespace eistheta::local_forms {

struct LocalInvariants {
    int hasse;    // h_q(T) = prod_{i<=j} <b_i,b_j>
    int epsilon;  // eps_q(T) = prod_{i<j} <b_i,b_j>
    int eta;      // Clifford invariant, parity-split formula
};

// Invariants at a prime q or at arith::real_place, from any rational
// diagonalization of T.  Requires det T != 0.
LocalInvariants local_invariants(const HalfIntSym& T, long place);

// xi_q(T) = chi_q((-1)^{n/2} det(2T)) for even n.
int xi_q(const HalfIntSym& T, long q);

}  // namespace eistheta::local_forms
