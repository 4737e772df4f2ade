#pragma once

#include "eistheta/half_integral.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace eistheta::local_forms {

// Upper-triangular representative of GL_n(Z_q)\M_n(Z_q)^nd:
// (R-1) diagonal q^{e_i}, (R-2) 0 <= d_ij <= q^{e_j}-1 for i<j, 0 below.
struct ReducedMatrix {
    int n = 0;
    long q = 0;
    std::vector<long> diag_exp;   // e_1..e_n
    std::vector<Int> entries;     // row-major n*n

    long det_exponent() const {
        long s = 0;
        for (long e : diag_exp) s += e;
        return s;
    }
};

// All reduced matrices with ord_q(det) = total_exponent, each exactly once.
std::vector<ReducedMatrix> enumerate_reduced(int n, long q, long total_exponent);

// Streaming form, for exponent sums too large to materialize.
void for_each_reduced(int n, long q, long total_exponent,
                      const std::function<void(const ReducedMatrix&)>& fn);

// T[g^{-1}] if it is half-integral, nullopt otherwise.
std::optional<HalfIntSym> transform_by_g_inverse(const HalfIntSym& T, const ReducedMatrix& g);

// No reduced g with det g = q keeps T[g^{-1}] half-integral.
bool is_maximal(const HalfIntSym& T, long q);

}  // namespace eistheta::local_forms
