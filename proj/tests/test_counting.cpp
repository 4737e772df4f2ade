#include "eistheta/digit_count.hpp"
#include "eistheta/fq_count.hpp"

#include <doctest.h>

using namespace eistheta;
using namespace eistheta::local_forms;
using arith::Int;

namespace {

// exhaustive reference over all X mod q^e (tiny instances only)
Int brute_lift_count(const HalfIntSym& S, const HalfIntSym& T, long q, long e, bool primitive) {
    int m = S.degree(), n = T.degree();
    long M = 1;
    for (long i = 0; i < e; ++i) M *= q;
    std::vector<long> X(static_cast<size_t>(m) * n, 0);
    Int count(0);
    while (true) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i; j < n && ok; ++j) {
                long long acc = 0;
                for (int r = 0; r < m; ++r)
                    for (int s2 = 0; s2 < m; ++s2)
                        acc += static_cast<long long>(X[static_cast<size_t>(i) * m + r]) *
                               S.two_t(r, s2).get_si() * X[static_cast<size_t>(j) * m + s2];
                long long c = acc - T.two_t(i, j).get_si();
                if (i == j) c /= 2;
                long long mod = M;
                if (((c % mod) + mod) % mod != 0) ok = false;
            }
        if (ok && primitive) {
            std::vector<std::vector<long>> rows(static_cast<size_t>(n),
                                                std::vector<long>(static_cast<size_t>(m)));
            for (int j = 0; j < n; ++j)
                for (int r = 0; r < m; ++r)
                    rows[static_cast<size_t>(j)][static_cast<size_t>(r)] =
                        X[static_cast<size_t>(j) * m + r] % q;
            int rank = 0;
            for (int c2 = 0; c2 < m && rank < n; ++c2) {
                int piv = -1;
                for (int i = rank; i < n; ++i)
                    if (rows[static_cast<size_t>(i)][static_cast<size_t>(c2)] % q != 0) { piv = i; break; }
                if (piv < 0) continue;
                std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(piv)]);
                for (int i = 0; i < n; ++i) {
                    if (i == rank) continue;
                    int guard = 0;
                    while (rows[static_cast<size_t>(i)][static_cast<size_t>(c2)] % q != 0 && guard++ <= q) {
                        for (int t = 0; t < m; ++t)
                            rows[static_cast<size_t>(i)][static_cast<size_t>(t)] =
                                (rows[static_cast<size_t>(i)][static_cast<size_t>(t)] +
                                 rows[static_cast<size_t>(rank)][static_cast<size_t>(t)]) % q;
                    }
                }
                ++rank;
            }
            if (rank < n) ok = false;
        }
        if (ok) ++count;
        size_t f = 0;
        for (; f < X.size(); ++f) {
            if (++X[f] < M) break;
            X[f] = 0;
        }
        if (f == X.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("scalar congruence x^2 = 1 mod 3") {
    CHECK(count_solutions(HalfIntSym::diag({1}), HalfIntSym::diag({1}), 3, 1, false) == 2);
}

TEST_CASE("engine matches exhaustive enumeration on tiny instances") {
    struct Case {
        HalfIntSym S, T;
        long q, e;
    };
    std::vector<Case> cases = {
        {HalfIntSym::diag({1}), HalfIntSym::diag({1}), 3, 2},
        {HalfIntSym::diag({1}), HalfIntSym::diag({9}), 3, 3},
        {HalfIntSym::diag({1, 1}), HalfIntSym::diag({1}), 3, 2},
        {HalfIntSym::diag({1, 2}), HalfIntSym::diag({3}), 3, 2},
        {hyperbolic(1), HalfIntSym::diag({2}), 2, 3},
        {hyperbolic(1), HalfIntSym::diag({0}), 2, 2},
        {HalfIntSym::diag({1, 1, 1}), HalfIntSym::diag({1, 1}), 2, 2},
        {HalfIntSym::diag({1, 1}), HalfIntSym::diag({1, 1}), 3, 1},
        {hyperbolic(1), hyperbolic(1), 3, 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.S.serialize());
        CAPTURE(c.T.serialize());
        CAPTURE(c.q);
        CAPTURE(c.e);
        CHECK(count_solutions(c.S, c.T, c.q, c.e, false) ==
              brute_lift_count(c.S, c.T, c.q, c.e, false));
        CHECK(count_solutions(c.S, c.T, c.q, c.e, true) ==
              brute_lift_count(c.S, c.T, c.q, c.e, true));
    }
}

TEST_CASE("collapses agree with the plain tree") {
    CountOptions plain;
    plain.rank_collapse = false;
    plain.linear_collapse = false;
    struct Case {
        HalfIntSym S, T;
        long q, e;
    };
    std::vector<Case> cases = {
        {HalfIntSym::diag({1, 1}), HalfIntSym::diag({2}), 3, 3},
        {HalfIntSym::diag({1, 2}), HalfIntSym::diag({1, 2}), 3, 2},
        {hyperbolic(1), HalfIntSym::diag({4}), 2, 4},
        {HalfIntSym::diag({1, 1, 3}), HalfIntSym::diag({1, 3}), 3, 3},
    };
    for (const auto& c : cases) {
        CAPTURE(c.S.serialize());
        CAPTURE(c.T.serialize());
        CHECK(count_solutions(c.S, c.T, c.q, c.e, false, plain) ==
              count_solutions(c.S, c.T, c.q, c.e, false));
        CHECK(count_solutions(c.S, c.T, c.q, c.e, true, plain) ==
              count_solutions(c.S, c.T, c.q, c.e, true));
    }
}

TEST_CASE("isometry count mod q: X must be an isometry of S mod q") {
    // S = T unimodular, e = 1: count = |O(S mod q)| up to the primitive count
    auto S = HalfIntSym::diag({1, 1});
    Int c = count_solutions(S, S, 3, 1, false);
    // O(2-dim form x^2+y^2 over F_3): 8 isometries... the count includes
    // non-invertible solutions too; the primitive count is the group order
    Int cp = count_solutions(S, S, 3, 1, true);
    CHECK(cp == fq_gram_count_primitive(S, S, 3));
    CHECK(c == fq_gram_count(S, S, 3));
    CHECK(cp == 8);
}

TEST_CASE("the q = 5 level-1 raw count of the paper-scale example") {
    // A_1(H_2, diag(1,1,3)) at q = 5: raw count 5^6 (24/25)^2 = 14400
    auto S = hyperbolic(2);
    auto T = HalfIntSym::diag({1, 1, 3});
    CHECK(count_solutions(S, T, 5, 1, false) == 14400);
}

TEST_CASE("primitive counts of unimodular S stabilize at level 1") {
    auto S = hyperbolic(2);
    for (const auto& T : {HalfIntSym::diag({1, 1, 3}), HalfIntSym::diag({1, 3, 3})}) {
        for (long q : {2L, 3L}) {
            Int b1 = count_solutions(S, T, q, 1, true);
            Int b2 = count_solutions(S, T, q, 2, true);
            Int b3 = count_solutions(S, T, q, 3, true);
            long shift = 4 * 3 - 6;  // mn - n(n+1)/2
            Int step = arith::int_pow(Int(q), static_cast<unsigned long>(shift));
            CHECK(b2 == b1 * step);
            CHECK(b3 == b2 * step);
            CHECK(b1 == fq_gram_count_primitive(S, T, q));
        }
    }
}

TEST_CASE("budget errors carry diagnostics") {
    CountOptions tiny;
    tiny.node_budget = 3;
    CHECK_THROWS_AS(count_solutions(hyperbolic(2), HalfIntSym::diag({1, 1, 3}), 3, 4, false, tiny),
                    BudgetError);
}
