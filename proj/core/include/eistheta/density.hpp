#pragma once

#include "eistheta/digit_count.hpp"
#include "eistheta/half_integral.hpp"

#include <optional>

namespace eistheta::local_forms {

class DensityCache;

// Local density evaluation certified by stabilization: the scaled count is
// computed at e0 = max(1, 2 ord_q(det 2T) + 1) and at e0 + 1 and must agree.
struct DensityResult {
    Rat value;
    long e_certified = 0;
    Int raw_count;  // A_{e_certified}(S,T), before scaling
    bool from_cache = false;
};

// alpha_q(S,T) by the counting engine, including the 2^{-delta_{m,n}} factor.
DensityResult alpha(const HalfIntSym& S, const HalfIntSym& T, long q,
                    const CountOptions& opts = CountOptions(), DensityCache* cache = nullptr);

// beta_q(S,T): primitive-solution analogue.
DensityResult beta(const HalfIntSym& S, const HalfIntSym& T, long q,
                   const CountOptions& opts = CountOptions(), DensityCache* cache = nullptr);

// beta_q(S,T) for S unimodular at q, evaluated in closed form: primitive
// counts stabilize from e = 1, so beta = 2^{-delta} B_1(S,T) q^{-(mn-N)}
// with B_1 the primitive count over F_q.
Rat beta_unimodular(const HalfIntSym& S, const HalfIntSym& T, long q);

// alpha_q(S,T) = sum over reduced g with T[g^{-1}] half-integral of
// q^{(n+1-m) ord_q(det g)} beta_q(S, T[g^{-1}]).  For S unimodular at q this
// is exact closed-form arithmetic at any prime; otherwise the beta values
// come from the certified counting engine.
Rat alpha_via_beta(const HalfIntSym& S, const HalfIntSym& T, long q,
                   const CountOptions& opts = CountOptions(), DensityCache* cache = nullptr);

// alpha_p(U_0 perp pU_0, T) closed forms, n = 3 or 4, odd p.
Rat alpha_p_closed(const HalfIntSym& T, long p);

}  // namespace eistheta::local_forms
