#pragma once

#include "eistheta/half_integral.hpp"

#include <map>
#include <vector>

namespace eistheta::global_forms {

using arith::Int;
using arith::Rat;
using eistheta::HalfIntSym;

// Truncated Fourier-coefficient table: all keys T >= 0 in Lambda_n with
// diagonal entries <= bound are present.
struct CoeffTable {
    int degree = 0;
    long bound = 0;
    std::map<HalfIntSym, Rat> entries;
};

// All T in Lambda_n with T >= 0 (or > 0) and diag(T) <= bound.
std::vector<HalfIntSym> enumerate_keys(int n, long bound, bool positive_definite_only);

// exact count of X in M_{m,n}(Z) with S[X] = T; S positive definite
Int rep_count(const HalfIntSym& S, const HalfIntSym& T, int threads = 1);

// order of the integral automorphism group, rep_count(S,S)
Int aut_count(const HalfIntSym& S);

// all x in Z^m with S[x] = t, by exact rational Cholesky bounds
std::vector<std::vector<long>> short_vectors(const HalfIntSym& S, const Int& t);

// table of rep_count(S,.) over keys of degree n up to the bound
CoeffTable theta_table(const HalfIntSym& S, int n, long bound, int threads = 1);

}  // namespace eistheta::global_forms
