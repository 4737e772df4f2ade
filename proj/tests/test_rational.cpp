#include "eistheta/rational.hpp"

#include <doctest.h>

using namespace eistheta::arith;

TEST_CASE("ord on rationals") {
    CHECK(ord(Rat(9, 14), 3) == Valuation::finite(2));
    CHECK(ord(Rat(1), 5) == Valuation::finite(0));
    CHECK(ord(Rat(11, 4), 2) == Valuation::finite(-2));
    CHECK(ord(Rat(0), 7).is_infinite());
}

TEST_CASE("ord is additive on products") {
    const long q = 3;
    Rat xs[] = {Rat(9, 14), Rat(5, 27), Rat(-6), Rat(7, 3)};
    for (const Rat& a : xs)
        for (const Rat& b : xs) {
            CHECK(ord(Rat(a * b), q) == ord(a, q) + ord(b, q));
        }
}

TEST_CASE("padic distance order") {
    CHECK(padic_distance_order(Rat(1, 6), Rat(1, 6), 5).is_infinite());
    // B_6 = 1/42; 1/42 + 1/3 - 1 = ord_3(...) = 2
    Rat b6(1, 42);
    CHECK(padic_distance_order(b6 + Rat(1, 3), Rat(1), 3) == Valuation::finite(2));
    CHECK(padic_distance_order(Rat(10), Rat(1), 3) == Valuation::finite(2));
}

TEST_CASE("rationals stay canonical") {
    Rat x(6, 4);
    x.canonicalize();
    CHECK(x.get_num() == 3);
    CHECK(x.get_den() == 2);
    Rat y = Rat(1, 3) - Rat(1, 3);
    CHECK(y.get_den() == 1);
    Rat z = Rat(-1, 2) + Rat(1, 4);
    CHECK(z.get_den() > 0);
}

TEST_CASE("unit part and powers") {
    CHECK(unit_part(Rat(18), 3) == Rat(2));
    CHECK(rat_pow(3, -2) == Rat(1, 9));
    CHECK(rat_pow(2, 5) == Rat(32));
    CHECK(is_p_integral(Rat(3, 4), 3));
    CHECK(!is_p_integral(Rat(3, 4), 2));
}

TEST_CASE("valuation serialization convention") {
    CHECK(Valuation::infinity().str() == "inf");
    CHECK(Valuation::finite(-2).str() == "-2");
}
