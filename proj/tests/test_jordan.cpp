#include "eistheta/invariants.hpp"
#include "eistheta/hilbert.hpp"
#include "eistheta/jordan.hpp"

#include <doctest.h>

using namespace eistheta;
using namespace eistheta::local_forms;
using arith::Int;
using arith::Rat;

namespace {

HalfIntSym rebuilt_diagonal(const JordanForm& jf) {
    // scale units to integers by squares (unit * den^2 keeps the class)
    std::vector<Int> e;
    int n = static_cast<int>(jf.blocks.size());
    e.assign(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) {
        Rat u = jf.blocks[static_cast<size_t>(i)].unit;
        Int scaled = u.get_num() * u.get_den();
        Int qe(1);
        for (long t = 0; t < jf.blocks[static_cast<size_t>(i)].exponent; ++t) qe *= jf.q;
        e[static_cast<size_t>(i) * n + i] = 2 * scaled * qe;
    }
    return HalfIntSym::from_two_t(n, std::move(e));
}

}  // namespace

TEST_CASE("already diagonal input") {
    auto T = HalfIntSym::diag({1, 1, 3});
    auto jf = jordan_decompose(T, 3);
    REQUIRE(jf.blocks.size() == 3);
    CHECK(jf.blocks[0].exponent == 0);
    CHECK(jf.blocks[1].exponent == 0);
    CHECK(jf.blocks[2].exponent == 1);
    CHECK(arith::chi_q(jf.blocks[2].unit, 3) == 1);
}

TEST_CASE("hyperbolic plane splits as <1,-1> at odd q") {
    auto jf = jordan_decompose(hyperbolic(1), 3);
    REQUIRE(jf.blocks.size() == 2);
    CHECK(jf.blocks[0].exponent == 0);
    CHECK(jf.blocks[1].exponent == 0);
    // product of units is -1 times a square
    Rat prod = jf.blocks[0].unit * jf.blocks[1].unit;
    CHECK(arith::chi_q(Rat(-1) * prod, 3) == 1);
}

TEST_CASE("binary form with det 3/4 at q = 3") {
    auto T = HalfIntSym::from_two_t(2, {Int(2), Int(1), Int(1), Int(2)});
    auto jf = jordan_decompose(T, 3);
    REQUIRE(jf.blocks.size() == 2);
    CHECK(jf.blocks[0].exponent == 0);
    CHECK(jf.blocks[1].exponent == 1);
    // det class: unit product * 3 ~ det 2T = 3 mod squares
    Rat prod = jf.diagonal_product();
    CHECK(arith::ord(prod, 3).value() == 1);
    CHECK(arith::chi_q(prod / T.det_t(), 3) == 1);
}

TEST_CASE("round trip: same det class and invariants") {
    long q = 5;
    std::vector<HalfIntSym> cases = {
        HalfIntSym::diag({1, 2, 10}),
        HalfIntSym::from_two_t(3, {Int(2), Int(1), Int(0), Int(1), Int(4), Int(5), Int(0), Int(5),
                                   Int(50)}),
        HalfIntSym::from_two_t(2, {Int(10), Int(5), Int(5), Int(10)}),
        hyperbolic(2),
    };
    for (const auto& T : cases) {
        auto jf = jordan_decompose(T, q);
        auto D = rebuilt_diagonal(jf);
        CHECK(arith::chi_q(D.det_t() / T.det_t(), q) == 1);
        auto it = local_invariants(T, q);
        auto id = local_invariants(D, q);
        CHECK(it.hasse == id.hasse);
        CHECK(it.epsilon == id.epsilon);
        CHECK(it.eta == id.eta);
    }
}

TEST_CASE("q = 2 and degenerate inputs rejected") {
    CHECK_THROWS_AS(jordan_decompose(HalfIntSym::diag({1, 1}), 2), std::domain_error);
    CHECK_THROWS_AS(jordan_decompose(HalfIntSym::diag({1, 0}), 3), std::domain_error);
}
