#include "eistheta/bernoulli.hpp"
#include "eistheta/eisenstein.hpp"

#include "eistheta/genus.hpp"
#include "eistheta/invariants.hpp"

#include <doctest.h>

using namespace eistheta;
using namespace eistheta::eisenstein;
using arith::Int;
using arith::Rat;
using arith::Valuation;

namespace {

const HalfIntSym& paper_t0() {
    static HalfIntSym T0 = HalfIntSym::from_two_t(
        3, {Int(2), Int(0), Int(1), Int(0), Int(2), Int(0), Int(1), Int(0), Int(6)});
    return T0;
}

Rat sigma(long k, long t) {
    Rat s(0);
    for (long d = 1; d <= t; ++d) {
        if (t % d != 0) continue;
        Rat p(1);
        for (long i = 0; i < k; ++i) p *= d;
        s += p;
    }
    return s;
}

}  // namespace

TEST_CASE("degree 1 oracle: -(2k/B_k) sigma_{k-1}(t)") {
    for (long k : {4L, 6L, 8L, 10L}) {
        for (long t = 1; t <= 20; ++t) {
            Rat expect = Rat(-2) * Rat(k) / arith::bernoulli(static_cast<unsigned long>(k)) *
                         sigma(k - 1, t);
            CAPTURE(k);
            CAPTURE(t);
            CHECK(eis_coeff(1, k, HalfIntSym::diag({t})) == expect);
        }
    }
    CHECK(eis_coeff(1, 4, HalfIntSym::diag({1})) == Rat(240));
    CHECK(eis_coeff(1, 6, HalfIntSym::diag({2})) == Rat(-16632));
}

TEST_CASE("chi_T examples") {
    // n = 4, det(2T) square: trivial character
    CHECK(chi_t(HalfIntSym::diag({1, 1, 1, 1})).is_trivial());
    // n = 2, det(2T) = 3: fundamental discriminant of Q(sqrt(-3))
    auto T2 = HalfIntSym::from_two_t(2, {Int(2), Int(1), Int(1), Int(2)});
    CHECK(chi_t(T2).discriminant == -3);
    // n = 2, det(2T) = 4: discriminant of Q(sqrt(-1)) = -4
    CHECK(chi_t(HalfIntSym::diag({1, 1})).discriminant == -4);
}

TEST_CASE("limit coefficients at p = 11") {
    CHECK(limit_eis2_coeff(3, 11, paper_t0()) == Rat(144, 25));
    // eta_p(T) = 1 vanishing: T unimodular at p has eta = +1
    CHECK(limit_eis2_coeff(3, 11, HalfIntSym::diag({1, 1, 1})) == Rat(0));
}

TEST_CASE("limit coefficients for n = 4") {
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        auto sp = eistheta::global_forms::construct_sp(p, p == 13 ? 8 : 6);
        Rat expect = Rat(1152) / (Rat(p - 1) * Rat(p - 1));
        CAPTURE(p);
        CHECK(limit_eis2_coeff(4, p, sp) == expect);
    }
    // non-square determinant vanishes regardless of local data
    CHECK(limit_eis2_coeff(4, 3, HalfIntSym::diag({1, 1, 1, 3})) == Rat(0));
}

TEST_CASE("first approximation congruence at p = 11") {
    // ord_11(a(E_12, T0) - 144/25) >= 1
    Rat a12 = eis_coeff(3, 12, paper_t0());
    CHECK(arith::padic_distance_order(a12, Rat(144, 25), 11) >= Valuation::finite(1));
}

TEST_CASE("limit reports: cauchy orders strictly increase") {
    // samples chosen so the convergence is visible already at m <= 3
    std::vector<HalfIntSym> samples = {
        HalfIntSym::deserialize(3, "2,-3,0,-3,6,0,0,0,2"),
        HalfIntSym::deserialize(3, "2,-3,-2,-3,6,3,-2,3,4"),
    };
    for (const auto& T : samples) {
        auto rep = limit_report(3, 3, T, 3);
        REQUIRE(rep.cauchy_orders.size() == 2);
        CHECK(rep.cauchy_orders[0] < rep.cauchy_orders[1]);
        REQUIRE(rep.has_target);
        CHECK(rep.distance_to_target.back() >= rep.distance_to_target.front());
    }
    // n = 1: differences of divisor sums, ord_p >= 1
    auto rep1 = limit_report(1, 5, HalfIntSym::diag({3}), 2);
    CHECK(rep1.cauchy_orders[0] >= Valuation::finite(1));
}

TEST_CASE("a-factor order identities from the degree >= 5 argument") {
    // ord_3((k_m - 2)/B_{2k_m - 4}) = m for p = 3, m = 1..3
    for (int m = 1; m <= 3; ++m) {
        long km = weight_km(3, m);
        Rat v = Rat(km - 2) / arith::bernoulli(static_cast<unsigned long>(2 * km - 4));
        CHECK(arith::ord(v, 3) == Valuation::finite(m));
    }
    // same at p = 7 for m = 1, 2
    for (int m = 1; m <= 2; ++m) {
        long km = weight_km(7, m);
        Rat v = Rat(km - 2) / arith::bernoulli(static_cast<unsigned long>(2 * km - 4));
        CHECK(arith::ord(v, 7) == Valuation::finite(m));
    }
    // ord_7(A_{k_m,5}(T)) grows with m
    auto T = HalfIntSym::diag({1, 1, 1, 1, 1});
    std::vector<long> orders;
    for (int m = 1; m <= 3; ++m)
        orders.push_back(arith::ord(a_factor(weight_km(7, m), 5, T), 7).value());
    CHECK(orders[0] < orders[1]);
    CHECK(orders[1] < orders[2]);
}

TEST_CASE("theta operator") {
    global_forms::CoeffTable tab;
    tab.degree = 2;
    tab.bound = 1;
    tab.entries[HalfIntSym::diag({0, 0})] = Rat(1);
    tab.entries[HalfIntSym::diag({1, 1})] = Rat(5);
    auto out = theta_operator(tab);
    CHECK(out.entries.at(HalfIntSym::diag({0, 0})) == Rat(0));
    CHECK(out.entries.at(HalfIntSym::diag({1, 1})) == Rat(5));
    auto twice = theta_operator(out);
    CHECK(twice.entries.at(HalfIntSym::diag({1, 1})) == Rat(5));
}

TEST_CASE("siegel phi on theta tables") {
    auto S = global_forms::p11_representatives()[0].gram;
    auto t2 = global_forms::theta_table(S, 2, 1);
    auto t1 = global_forms::theta_table(S, 1, 1);
    auto phi = siegel_phi(t2);
    REQUIRE(phi.entries.size() == t1.entries.size());
    for (const auto& [key, v] : t1.entries) CHECK(phi.entries.at(key) == v);
    // genus theta tables commute with phi as well
    auto reps = global_forms::p11_representatives();
    global_forms::CoeffTable g2, g1;
    g2.degree = 2;
    g2.bound = 1;
    for (const auto& T : global_forms::enumerate_keys(2, 1, false))
        g2.entries[T] = global_forms::genus_theta_coeff(reps, T);
    g1.degree = 1;
    g1.bound = 1;
    for (const auto& T : global_forms::enumerate_keys(1, 1, false))
        g1.entries[T] = global_forms::genus_theta_coeff(reps, T);
    auto gphi = siegel_phi(g2);
    for (const auto& [key, v] : g1.entries) CHECK(gphi.entries.at(key) == v);
}

TEST_CASE("congruence_check basics") {
    global_forms::CoeffTable a;
    a.degree = 1;
    a.bound = 2;
    a.entries[HalfIntSym::diag({1})] = Rat(3);
    a.entries[HalfIntSym::diag({2})] = Rat(10);
    auto self = congruence_check(a, a, 5, 4);
    CHECK(self.pass);
    global_forms::CoeffTable b = a;
    b.entries[HalfIntSym::diag({2})] = Rat(11);
    auto diff = congruence_check(a, b, 5, 1);
    CHECK(!diff.pass);
    b.entries[HalfIntSym::diag({2})] = Rat(1, 5);
    CHECK_THROWS_AS(congruence_check(a, b, 5, 1), std::domain_error);
}

TEST_CASE("theta operator kernel: Theta(E_4^(3)) = 0 mod 3 on diagonal <= 1") {
    auto table = eis_table(3, 4, 1);
    auto theta = theta_operator(table);
    for (const auto& [key, v] : theta.entries) {
        CAPTURE(key.serialize());
        CHECK(arith::is_p_integral(v, 3));
        CHECK(arith::ord(v, 3) >= Valuation::finite(1));
    }
}
