#pragma once

#include "eistheta/half_integral.hpp"

#include <stdexcept>
#include <string>

namespace eistheta::local_forms {

// Counting engine for A_e(S,T) and B_e(S,T): the number of X in
// M_{m,n}(Z/q^e) with S[X] = T mod q^e H_n(Z_q), optionally restricted to
// primitive X (rank n mod q).  Congruence semantics on C = 2(S[X]-T):
// diagonal entries mod 2q^e, off-diagonal mod q^e.
//
// The engine lifts solutions digit by digit from mod q upward.  Two exact
// subtree collapses keep the tree small:
//  - rank collapse: once the Jacobian mod q has full row rank, every further
//    level contributes exactly q^{mn - n(n+1)/2} lifts;
//  - linearization: once 2c >= e, the quadratic tail q^{2c}(...) vanishes
//    mod q^e and the remaining lifts solve a linear system counted exactly
//    through its Smith normal form over Z/q^{e-c}.
// Both can be disabled to obtain the plain exhaustive tree for testing.

struct CountOptions {
    long long node_budget = 64000000;
    int threads = 1;
    bool rank_collapse = true;
    bool linear_collapse = true;
};

class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

Int count_solutions(const HalfIntSym& S, const HalfIntSym& T, long q, long e,
                    bool primitive_only, const CountOptions& opts = CountOptions());

}  // namespace eistheta::local_forms
