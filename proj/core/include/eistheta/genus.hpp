#pragma once

#include "eistheta/half_integral.hpp"
#include "eistheta/lattice.hpp"

#include <vector>

namespace eistheta::global_forms {

struct GenusRep {
    HalfIntSym gram;
    Int aut;  // a(S,S)
};

// The three GL_4(Z)-classes of genus(S^(11)), with automorphism counts
// verified by aut_count in the tests.
std::vector<GenusRep> p11_representatives();

// Build representatives with computed automorphism counts.
GenusRep make_rep(const HalfIntSym& gram);

// M(S) = sum 1/a(S_i,S_i)
Rat mass(const std::vector<GenusRep>& reps);

// a(genus Theta^(n)(S), T) = (sum a(S_i,T)/a_i) / (sum 1/a_i)
Rat genus_theta_coeff(const std::vector<GenusRep>& reps, const HalfIntSym& T, int threads = 1);

// least N >= 1 with N (2S)^{-1} integral with even diagonal
long level(const HalfIntSym& S);

// det = p^2/16, level p, h_q = -1 exactly at q in {2,p}, square unit
// codeterminant everywhere: the conditions characterizing genus(S^(p)).
bool verify_genus_membership(const HalfIntSym& S, long p);

// deterministic search for some S in Lambda_4^+ in genus(S^(p))
HalfIntSym construct_sp(long p, long search_bound);

// Siegel weighted average: computes the representative-weighted average and
// the local-density product formula (with exact symbolic pi bookkeeping) and
// asserts their equality.  S must be in genus(S^(p)) for some odd p; n = 3
// or 4.
Rat siegel_weighted_average(const HalfIntSym& S, const HalfIntSym& T,
                            const std::vector<GenusRep>& reps);

}  // namespace eistheta::global_forms
