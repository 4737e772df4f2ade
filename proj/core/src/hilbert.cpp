#include "eistheta/hilbert.hpp"

#include <stdexcept>

namespace eistheta::arith {

long rat_mod(const Rat& x, long M) {
    Int m(M);
    Int num = x.get_num() % m;
    if (num < 0) num += m;
    Int den = x.get_den() % m;
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("rat_mod: denominator not invertible");
    Int r = (num * den_inv) % m;
    return r.get_si();
}

int legendre(const Int& a, long q) {
    Int m(q);
    return mpz_kronecker(a.get_mpz_t(), m.get_mpz_t());
}

namespace {

int legendre_unit(const Rat& u, long q) {
    return legendre(Int(rat_mod(u, q)), q);
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, long place) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
    if (place == real_place) return (a < 0 && b < 0) ? -1 : 1;
    long q = place;
    if (!is_prime(q)) throw std::domain_error("hilbert_symbol: place must be prime or real");
    long alpha = ord(a, q).value();
    long beta = ord(b, q).value();
    Rat u = a / rat_pow(q, alpha);
    Rat v = b / rat_pow(q, beta);
    if (q == 2) {
        long um = rat_mod(u, 8);
        long vm = rat_mod(v, 8);
        long eps_u = (um - 1) / 2 % 2;  // (u-1)/2 mod 2
        long eps_v = (vm - 1) / 2 % 2;
        long om_u = (um * um - 1) / 8 % 2;  // (u^2-1)/8 mod 2
        long om_v = (vm * vm - 1) / 8 % 2;
        long e = eps_u * eps_v + alpha * om_v + beta * om_u;
        return (e % 2 == 0) ? 1 : -1;
    }
    int s = 1;
    if ((alpha % 2) && (beta % 2) && (q % 4 == 3)) s = -s;  // (-1|q)^{alpha beta}
    if (beta % 2) s *= legendre_unit(u, q);
    if (alpha % 2) s *= legendre_unit(v, q);
    return s;
}

int chi_q(const Rat& a, long q) {
    if (a == 0) throw std::domain_error("chi_q: a = 0");
    long v = ord(a, q).value();
    if (v % 2 != 0) return 0;  // odd valuation: ramified
    Rat u = a / rat_pow(q, v);
    if (q == 2) {
        long um = rat_mod(u, 8);
        if (um == 1) return 1;
        if (um == 5) return -1;
        return 0;  // 3,7 mod 8: ramified
    }
    return legendre_unit(u, q);
}

}  // namespace eistheta::arith
