#pragma once

#include "eistheta/half_integral.hpp"

#include <vector>

namespace eistheta::local_forms {

using arith::Rat;

// Jordan splitting of T over Z_q, odd q: T ~ ⟂_i eps_i q^{a_i} with the
// eps_i q-adic units, blocks sorted by exponent.
struct JordanForm {
    long q = 0;
    struct Block {
        long exponent;
        Rat unit;  // q-adic unit, exact rational representative
    };
    std::vector<Block> blocks;

    // product of eps_i q^{a_i}; equals det T up to squares of units
    Rat diagonal_product() const {
        Rat r(1);
        for (const auto& b : blocks) r *= b.unit * arith::rat_pow(q, b.exponent);
        return r;
    }
};

// Diagonalization over Z_q by pivoting on an entry of minimal q-valuation;
// off-diagonal minima are absorbed by a unimodular row/column merge first.
JordanForm jordan_decompose(const HalfIntSym& T, long q);

}  // namespace eistheta::local_forms
