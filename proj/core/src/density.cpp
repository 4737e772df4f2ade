#include "eistheta/density.hpp"

#include "eistheta/density_cache.hpp"
#include "eistheta/fq_count.hpp"
#include "eistheta/hilbert.hpp"
#include "eistheta/invariants.hpp"
#include "eistheta/reduced.hpp"

#include <cmath>
#include <stdexcept>

namespace eistheta::local_forms {

namespace {

Int counted(const HalfIntSym& S, const HalfIntSym& T, long q, long e, bool primitive,
            const CountOptions& opts, DensityCache* cache) {
    std::string sk, tk;
    if (cache) {
        sk = S.serialize();
        tk = T.serialize();
        if (auto hit = cache->lookup(S.degree(), T.degree(), q, e, primitive, sk, tk)) return *hit;
    }
    Int c = count_solutions(S, T, q, e, primitive, opts);
    if (cache) cache->store(S.degree(), T.degree(), q, e, primitive, sk, tk, c);
    return c;
}

Rat scale_count(const Int& raw, int m, int n, long q, long e) {
    // 2^{-delta_{m,n}} raw q^{e(-mn + n(n+1)/2)}
    long exp = e * (static_cast<long>(m) * n - static_cast<long>(n) * (n + 1) / 2);
    Rat v = Rat(raw) / arith::rat_pow(q, exp);
    if (m == n) v /= 2;
    return v;
}

// worst-case live-node count before the linearization collapse can fire;
// for S unimodular at q the full-rank collapse already prunes every stratum
// with independent columns, which thins each level by about q^{m-n+1}
double explored_estimate(long q, long e, int m, int n, bool s_unimodular) {
    long c_star = (e + 1) / 2;
    double per_level = std::pow(static_cast<double>(q),
                                static_cast<double>(m) * n - static_cast<double>(n) * (n + 1) / 2);
    double thinning = s_unimodular ? std::pow(static_cast<double>(q), m - n + 1) : 1.0;
    double est = per_level;
    for (long c = 1; c < c_star; ++c) est *= per_level / thinning;
    return est;
}

DensityResult certified(const HalfIntSym& S, const HalfIntSym& T, long q, bool primitive,
                        const CountOptions& opts, DensityCache* cache) {
    if (T.det_two_t() == 0) throw std::domain_error("density: degenerate T");
    long D = arith::ord(T.det_two_t(), q).value();
    long pinned = std::max(1L, 2 * D + 1);
    // Certification ladder: prefer the pinned exponent, step down when the
    // lifting tree cannot fit the node budget.  The certificate itself (two
    // consecutive exponents agreeing) is the same at every rung, and the
    // result records which exponent was certified.
    bool s_uni = unimodular_at(S, q);
    for (long e0 = pinned; e0 >= 1; --e0) {
        if (e0 > 1 &&
            explored_estimate(q, e0 + 1, S.degree(), T.degree(), s_uni) >
                static_cast<double>(opts.node_budget))
            continue;
        try {
            Int raw0 = counted(S, T, q, e0, primitive, opts, cache);
            Int raw1 = counted(S, T, q, e0 + 1, primitive, opts, cache);
            Rat v0 = scale_count(raw0, S.degree(), T.degree(), q, e0);
            Rat v1 = scale_count(raw1, S.degree(), T.degree(), q, e0 + 1);
            if (v0 != v1)
                throw std::logic_error("density: scaled counts did not stabilize at e0=" +
                                       std::to_string(e0) + " (q=" + std::to_string(q) + ")");
            return DensityResult{v0, e0, raw0, false};
        } catch (const BudgetError&) {
            if (e0 == 1) throw;
        }
    }
    throw BudgetError("density: no feasible certification exponent (q=" + std::to_string(q) + ")");
}

}  // namespace

DensityResult alpha(const HalfIntSym& S, const HalfIntSym& T, long q, const CountOptions& opts,
                    DensityCache* cache) {
    return certified(S, T, q, false, opts, cache);
}

DensityResult beta(const HalfIntSym& S, const HalfIntSym& T, long q, const CountOptions& opts,
                   DensityCache* cache) {
    return certified(S, T, q, true, opts, cache);
}

Rat beta_unimodular(const HalfIntSym& S, const HalfIntSym& T, long q) {
    if (!unimodular_at(S, q)) throw std::domain_error("beta_unimodular: S not unimodular at q");
    int m = S.degree(), n = T.degree();
    Int b1 = fq_gram_count_primitive(S, T, q);
    long exp = static_cast<long>(m) * n - static_cast<long>(n) * (n + 1) / 2;
    Rat v = Rat(b1) / arith::rat_pow(q, exp);
    if (m == n) v /= 2;
    return v;
}

Rat alpha_via_beta(const HalfIntSym& S, const HalfIntSym& T, long q, const CountOptions& opts,
                   DensityCache* cache) {
    if (T.det_two_t() == 0) throw std::domain_error("alpha_via_beta: degenerate T");
    int m = S.degree(), n = T.degree();
    long D = arith::ord(T.det_two_t(), q).value();
    bool closed = unimodular_at(S, q);
    Rat total(0);
    for (long d = 0; 2 * d <= D; ++d) {
        for_each_reduced(n, q, d, [&](const ReducedMatrix& g) {
            auto Tg = transform_by_g_inverse(T, g);
            if (!Tg) return;
            Rat b = closed ? beta_unimodular(S, *Tg, q) : beta(S, *Tg, q, opts, cache).value;
            total += arith::rat_pow(q, (n + 1 - m) * d) * b;
        });
    }
    return total;
}

Rat alpha_p_closed(const HalfIntSym& T, long p) {
    if (p == 2 || !arith::is_prime(p)) throw std::domain_error("alpha_p_closed: p must be odd prime");
    int n = T.degree();
    if (T.det_two_t() == 0) throw std::domain_error("alpha_p_closed: degenerate T");
    if (n == 3) {
        int eta = local_invariants(T, p).eta;
        return Rat(1 + p) * (Rat(1) + Rat(1, p)) * Rat(1 - eta);
    }
    if (n == 4) {
        long D = arith::ord(T.det_two_t(), p).value();
        if (D == 0 || D % 2 != 0) return Rat(0);
        Rat unit = Rat(T.det_two_t()) / arith::rat_pow(p, D);
        if (arith::chi_q(unit, p) != 1) return Rat(0);
        if (local_invariants(T, p).eta != -1) return Rat(0);
        // In the counting normalization used throughout (the 2^{-delta} A_e
        // limit), the p-block contributes p^{m+2}, not p^m: certified by the
        // stabilized counts for U_0 perp pU_0 against itself and by the mass
        // consistency of the weighted average.
        Rat v = Rat(2) * (Rat(1) + Rat(1, p)) * (Rat(1) + Rat(1, p));
        return v * arith::rat_pow(p, D / 2 + 2);
    }
    throw std::domain_error("alpha_p_closed: n must be 3 or 4");
}

}  // namespace eistheta::local_forms
