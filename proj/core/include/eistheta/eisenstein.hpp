#pragma once

#include "eistheta/characters.hpp"
#include "eistheta/half_integral.hpp"
#include "eistheta/lattice.hpp"
#include "eistheta/rational.hpp"

#include <string>
#include <vector>

namespace eistheta::eisenstein {

using arith::QuadChar;
using arith::Rat;
using arith::Valuation;
using global_forms::CoeffTable;

// chi_T: primitive quadratic character of Q(sqrt((-1)^{n/2} det 2T)), even n.
QuadChar chi_t(const HalfIntSym& T);

// Fourier coefficient a(E_k^(n), T) of the Siegel Eisenstein series,
// 1 <= n <= 4, k even.  (Weight k = n+1 is admitted: the boundary weight is
// given by the same coefficient formula and is what the p = 3 congruence
// checks consume.)
Rat eis_coeff(int n, long k, const HalfIntSym& T);

// a(E~_2^(n), T) for n = 3 or 4: the p-adic limit closed forms.
Rat limit_eis2_coeff(int n, long p, const HalfIntSym& T);

// k_m = 2 + (p-1) p^{m-1}
long weight_km(long p, int m);

struct LimitReport {
    Rat target;
    bool has_target = false;
    std::vector<long> weights;
    std::vector<Rat> terms;
    std::vector<Valuation> cauchy_orders;  // ord_p of successive differences
    std::vector<Valuation> distance_to_target;
};

LimitReport limit_report(int n, long p, const HalfIntSym& T, int m_terms);

// A_{k,n}(T): the factor extracted for the n >= 5 vanishing argument (note
// the k-i numerators, which differ from the eis_coeff normalization).
Rat a_factor(long k, int n, const HalfIntSym& T);

// entrywise multiplication by det(T)
CoeffTable theta_operator(const CoeffTable& table);

// Siegel lowering operator on coefficient tables: entry at T' reads T' ⊥ 0.
CoeffTable siegel_phi(const CoeffTable& table);

struct CongruenceReport {
    long checked = 0;
    bool pass = true;
    std::vector<std::pair<HalfIntSym, long>> failures;  // key, attained order
};

// verify ord_p(a - b) >= power on the shared keys; all values must be
// p-integral
CongruenceReport congruence_check(const CoeffTable& a, const CoeffTable& b, long p, long power);

// coefficient table of E_k^(n) on all keys with diagonal <= bound
// (positive-definite keys carry the formula value; singular keys are
// filled through the Siegel operator relation when requested)
CoeffTable eis_table(int n, long k, long bound);

// coefficient table of E~_2^(n) (p-adic limit), n = 3 or 4
CoeffTable limit_eis2_table(int n, long p, long bound);

}  // namespace eistheta::eisenstein
