#pragma once

#include "eistheta/density.hpp"
#include "eistheta/half_integral.hpp"

#include <vector>

namespace eistheta::local_forms {

// F_q(T,X): the integral polynomial part of the Siegel series,
// b_q(T,s) = gamma_q(T,q^{-s}) F_q(T,q^{-s}).
struct FqPoly {
    long q = 0;
    std::vector<Int> coeffs;  // constant term first; coeffs[0] = 1

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rat(coeffs[i]);
        return acc;
    }
};

// gamma_q(T,X) as a rational-coefficient polynomial (constant term first).
// Even n uses the exact cancellation against (1 - q^{n/2} xi_q(T) X).
std::vector<Rat> gamma_poly(const HalfIntSym& T, long q);

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& x);

// F_q(T, q^{-2}) for n = 3, F_q(T, q^{-3}) for n = 4 (needs det(2T) square
// in Z_q), both through alpha_q(H_2, T) and the closed-form prefactors.
Rat fq_at_special(const HalfIntSym& T, long q);

// Full polynomial by interpolation through b~_q(T, q^{-k}) = 2^{delta_{2k,n}}
// alpha_q(H_k, T), k = ceil(n/2) .. ceil(n/2)+D.  Asserts integer
// coefficients and constant term 1.
FqPoly fq_interpolate(const HalfIntSym& T, long q);

// Functional equation for n = 3, verified coefficient-wise with
// d = ord_q(4 det T): a_{d-k} = eta_q(T) q^{2d-4k} a_k.
bool check_functional_equation_n3(const FqPoly& F, const HalfIntSym& T, long q);

}  // namespace eistheta::local_forms
