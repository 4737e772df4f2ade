#include "eistheta/density.hpp"

#include "eistheta/density_cache.hpp"
#include "eistheta/invariants.hpp"
#include "eistheta/reduced.hpp"

#include <doctest.h>

#include <cstdio>

using namespace eistheta;
using namespace eistheta::local_forms;
using arith::Int;
using arith::Rat;

TEST_CASE("alpha_q(H_2, diag(1,1,3)) at q = 5 is (1-5^-2)^2") {
    auto res = alpha(hyperbolic(2), HalfIntSym::diag({1, 1, 3}), 5);
    CHECK(res.value == Rat(576, 625));
    CHECK(res.e_certified == 1);
    CHECK(res.raw_count == 14400);
}

TEST_CASE("alpha_p(U0 perp pU0, diag(1,1,3)) at p = 3 is 32/3") {
    auto S = u0_perp_pu0(3);
    auto res = alpha(S, HalfIntSym::diag({1, 1, 3}), 3);
    CHECK(res.value == Rat(32, 3));
    CHECK(alpha_p_closed(HalfIntSym::diag({1, 1, 3}), 3) == Rat(32, 3));
}

TEST_CASE("m = n carries the halving factor") {
    // alpha_q(S,S) for S unimodular: half the orthogonal group density
    auto S = HalfIntSym::diag({1, 1});
    auto res = alpha(S, S, 3);
    Rat direct = Rat(count_solutions(S, S, 3, 1, false)) / Rat(3);  // q^{-(mn - n(n+1)/2)} = 3^{-1}
    CHECK(res.value == direct / 2);
}

TEST_CASE("alpha = alpha_via_beta on mixed instances") {
    struct Case {
        HalfIntSym S, T;
        long q;
    };
    std::vector<Case> cases = {
        {hyperbolic(2), HalfIntSym::diag({1, 1, 3}), 5},
        {hyperbolic(2), HalfIntSym::diag({1, 1, 9}), 3},
        {hyperbolic(2), HalfIntSym::diag({1, 1, 4}), 2},
        {hyperbolic(1), HalfIntSym::diag({9}), 3},
        {HalfIntSym::diag({1, 1, 1}), HalfIntSym::diag({2}), 5},
    };
    for (const auto& c : cases) {
        CAPTURE(c.S.serialize());
        CAPTURE(c.T.serialize());
        CAPTURE(c.q);
        CHECK(alpha(c.S, c.T, c.q).value == alpha_via_beta(c.S, c.T, c.q));
    }
}

TEST_CASE("T unimodular at q: alpha equals beta, only g = 1 contributes") {
    auto S = hyperbolic(2);
    auto T = HalfIntSym::diag({1, 1, 1});
    for (long q : {3L, 5L}) {
        CHECK(alpha_via_beta(S, T, q) == beta_unimodular(S, T, q));
        CHECK(alpha(S, T, q).value == beta_unimodular(S, T, q));
    }
}

TEST_CASE("uniqueness of the maximal reduct: T = diag(1,3,3), chi_3(-1) = -1") {
    // only one g contributes to the beta sum for S = U0 perp 3U0
    auto S = u0_perp_pu0(3);
    auto T = HalfIntSym::diag({1, 3, 3});
    long q = 3;
    int contributing = 0;
    long D = arith::ord(T.det_two_t(), q).value();
    for (long d = 0; 2 * d <= D; ++d)
        for (const auto& g : enumerate_reduced(3, q, d)) {
            auto Tg = transform_by_g_inverse(T, g);
            if (!Tg) continue;
            if (beta(S, *Tg, q).value != 0) ++contributing;
        }
    CHECK(contributing == 1);
    CHECK(alpha(S, T, q).value == alpha_via_beta(S, T, q));
}

TEST_CASE("alpha_p_closed battery against brute force at p = 3") {
    auto S = u0_perp_pu0(3);
    // the six maximality patterns: unimodular, case 2 with both eta signs,
    // case 3, and two non-maximal shapes
    std::vector<HalfIntSym> ts = {
        HalfIntSym::diag({1, 1, 1}),  // case 1: eta = +1, alpha = 0
        HalfIntSym::diag({1, 1, 3}),  // case 2, chi_3(-1) = -1: alpha = 32/3
        HalfIntSym::diag({1, 2, 3}),  // case 2, chi_3(-2) = +1: alpha = 0
        HalfIntSym::diag({1, 3, 3}),  // case 3: alpha = 32/3
        HalfIntSym::diag({1, 1, 9}),  // non-maximal, eta = +1: alpha = 0
        HalfIntSym::diag({1, 3, 6}),  // non-maximal (chi_3(-18/9) = +1)
    };
    for (const auto& T : ts) {
        CAPTURE(T.serialize());
        CHECK(alpha(S, T, 3).value == alpha_p_closed(T, 3));
    }
}

TEST_CASE("alpha_p_closed for n = 4 (counting normalization)") {
    long p = 3;
    auto sp = u0_perp_pu0(p);
    // stabilized counts for S against itself: A_2/3^12/2 = A_3/3^18/2 = 96
    CHECK(alpha_p_closed(sp, p) == Rat(96));
    CHECK(alpha_p_closed(sp, p) ==
          Rat(2) * Rat(p + 1, p) * Rat(p + 1, p) * Rat(p) * Rat(p) * Rat(p));
    CHECK(alpha_p_closed(HalfIntSym::diag({1, 1, 1, 1}), p) == 0);    // ord = 0
    CHECK(alpha_p_closed(HalfIntSym::diag({1, 1, 1, 3}), p) == 0);    // odd ord
    CHECK(alpha_p_closed(HalfIntSym::diag({1, 1, 3, 6}), p) == 0);    // unit part 2: nonsquare
}

TEST_CASE("alpha_p_closed n = 4 agrees with stabilized counts at p = 3") {
    auto sp = u0_perp_pu0(3);
    CountOptions big;
    big.node_budget = 300000000;
    big.threads = 8;
    Int a2 = count_solutions(sp, sp, 3, 2, false, big);
    Rat v2 = Rat(a2) / arith::rat_pow(3, 12) / 2;
    CHECK(v2 == alpha_p_closed(sp, 3));
}

TEST_CASE("density cache round trip and cold-vs-warm equality") {
    std::string path = "test_density_cache.jsonl";
    std::remove(path.c_str());
    Rat cold, warm;
    {
        DensityCache cache(path);
        auto r = alpha(hyperbolic(2), HalfIntSym::diag({1, 1, 3}), 3, CountOptions(), &cache);
        cold = r.value;
        cache.flush();
        CHECK(cache.size() > 0);
    }
    {
        DensityCache cache(path);
        long long h0 = cache.hits();
        auto r = alpha(hyperbolic(2), HalfIntSym::diag({1, 1, 3}), 3, CountOptions(), &cache);
        warm = r.value;
        CHECK(cache.hits() > h0);
    }
    CHECK(cold == warm);
    std::remove(path.c_str());
}

TEST_CASE("threaded counting is deterministic") {
    CountOptions two;
    two.threads = 2;
    auto S = hyperbolic(2);
    auto T = HalfIntSym::diag({1, 1, 3});
    CHECK(count_solutions(S, T, 3, 3, false, two) == count_solutions(S, T, 3, 3, false));
}
