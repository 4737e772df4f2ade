#include "eistheta/hilbert.hpp"

#include <doctest.h>

#include <random>

using namespace eistheta::arith;

namespace {

// brute-force oracle: <a,b>_q = 1 iff a x^2 + b y^2 = z^2 has a primitive
// solution mod q^(2 max(ord a, ord b) + 3); denominators are cleared by
// squares first, which leaves the symbol unchanged
int hilbert_brute(const Rat& a, const Rat& b, long q) {
    Int an = a.get_num() * a.get_den();
    Int bn = b.get_num() * b.get_den();
    long va = ord(an, q).value(), vb = ord(bn, q).value();
    long e = 2 * std::max(va, vb) + 3;
    long M = 1;
    for (long i = 0; i < e; ++i) M *= q;
    auto norm = [&](const Int& x) {
        Int r = x % M;
        if (r < 0) r += M;
        return r.get_si();
    };
    long am = norm(an), bm = norm(bn);
    std::vector<char> is_sq(static_cast<size_t>(M), 0);
    for (long z = 0; z < M; ++z) is_sq[static_cast<size_t>((z * z) % M)] = 1;
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y) {
            if (x % q == 0 && y % q == 0) continue;  // any z would be divisible too
            long lhs = (am * ((x * x) % M) + bm * ((y * y) % M)) % M;
            if (is_sq[static_cast<size_t>(lhs)]) return 1;
        }
    return -1;
}

}  // namespace

TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert_symbol(Rat(1), Rat(7), 3) == 1);
    CHECK(hilbert_symbol(Rat(11), Rat(11), 11) == -1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), real_place) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(3), real_place) == 1);
}

TEST_CASE("hilbert symbol vs brute-force solvability, small odd q") {
    for (long q : {3L, 5L}) {
        Rat cases[] = {Rat(1), Rat(-1), Rat(2), Rat(q), Rat(-q), Rat(2 * q)};
        for (const Rat& a : cases)
            for (const Rat& b : cases) {
                CAPTURE(a.get_str());
                CAPTURE(b.get_str());
                CAPTURE(q);
                CHECK(hilbert_symbol(a, b, q) == hilbert_brute(a, b, q));
            }
    }
}

TEST_CASE("hilbert symbol at q = 2 against classical values") {
    CHECK(hilbert_symbol(Rat(2), Rat(2), 2) == 1);    // (1,1,2): 2+2 = 4
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), 2) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(-1), 2) == 1);   // (1,1,1): 2-1 = 1
    CHECK(hilbert_symbol(Rat(5), Rat(2), 2) == -1);
    CHECK(hilbert_symbol(Rat(3), Rat(2), 2) == -1);   // forced by the product formula
    CHECK(hilbert_symbol(Rat(3), Rat(5), 2) == 1);    // 3*4+5 = 17 = 7^2 mod 32
}

TEST_CASE("hilbert symbol vs brute force at q = 2") {
    Rat cases[] = {Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(3), Rat(5), Rat(6)};
    for (const Rat& a : cases)
        for (const Rat& b : cases) {
            CAPTURE(a.get_str());
            CAPTURE(b.get_str());
            CHECK(hilbert_symbol(a, b, 2) == hilbert_brute(a, b, 2));
        }
}

TEST_CASE("symmetry, bimultiplicativity, <a,-a> = 1") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
    auto rnd = [&]() {
        Rat r(0);
        while (r == 0) {
            Rat v(num(rng), den(rng));
            v.canonicalize();
            r = v;
        }
        return r;
    };
    for (long place : {real_place, 2L, 3L, 5L, 11L}) {
        for (int i = 0; i < 40; ++i) {
            Rat a = rnd(), b = rnd(), c = rnd();
            CHECK(hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place));
            CHECK(hilbert_symbol(Rat(a * b), c, place) ==
                  hilbert_symbol(a, c, place) * hilbert_symbol(b, c, place));
            CHECK(hilbert_symbol(a, Rat(-a), place) == 1);
        }
    }
}

TEST_CASE("product formula over all places on 100 random rationals") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-10000, 10000), den(1, 10000);
    int tested = 0;
    while (tested < 100) {
        Rat a(num(rng), den(rng));
        Rat b(num(rng), den(rng));
        if (a == 0 || b == 0) continue;
        a.canonicalize();
        b.canonicalize();
        ++tested;
        int prod = hilbert_symbol(a, b, real_place);
        // only places dividing the numerators/denominators (and 2) matter
        Int support = abs(a.get_num() * a.get_den() * b.get_num() * b.get_den());
        prod *= hilbert_symbol(a, b, 2);
        Int rest = support;
        while (rest % 2 == 0) rest /= 2;
        for (long q = 3; Int(q) * q <= rest; q += 2) {
            if (rest % q != 0) continue;
            prod *= hilbert_symbol(a, b, q);
            while (rest % q == 0) rest /= q;
        }
        if (rest > 1) prod *= hilbert_symbol(a, b, rest.get_si());
        CHECK(prod == 1);
    }
}

TEST_CASE("chi_q classification") {
    CHECK(chi_q(Rat(1), 7) == 1);
    CHECK(chi_q(Rat(4), 7) == 1);
    CHECK(chi_q(Rat(-1), 11) == -1);  // 11 = 3 mod 4
    CHECK(chi_q(Rat(11), 11) == 0);
    CHECK(chi_q(Rat(9, 4), 3) == 1);
    CHECK(chi_q(Rat(1), 2) == 1);
    CHECK(chi_q(Rat(5), 2) == -1);
    CHECK(chi_q(Rat(3), 2) == 0);
    CHECK(chi_q(Rat(2), 2) == 0);
    CHECK(chi_q(Rat(17), 2) == 1);  // 17 = 1 mod 8
}
