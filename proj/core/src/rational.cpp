#include "eistheta/rational.hpp"

#include <ostream>

namespace eistheta::arith {

std::ostream& operator<<(std::ostream& os, const Valuation& val) {
    return os << val.str();
}

Valuation ord(const Int& x, long q) {
    if (q < 2) throw std::domain_error("ord: q must be prime");
    if (x == 0) return Valuation::infinity();
    Int t = x;
    long v = 0;
    Int quo, rem;
    while (true) {
        mpz_tdiv_qr_ui(quo.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(q));
        if (rem != 0) break;
        t = quo;
        ++v;
    }
    return Valuation::finite(v);
}

Valuation ord(const Rat& x, long q) {
    if (x == 0) return Valuation::infinity();
    Valuation num = ord(Int(x.get_num()), q);
    Valuation den = ord(Int(x.get_den()), q);
    return Valuation::finite(num.value() - den.value());
}

Valuation padic_distance_order(const Rat& x, const Rat& y, long q) {
    return ord(Rat(x - y), q);
}

Rat unit_part(const Rat& x, long q) {
    if (x == 0) throw std::domain_error("unit_part: x = 0");
    long v = ord(x, q).value();
    Rat u = x / rat_pow(q, v);
    return u;
}

Rat rat_pow(long q, long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(k >= 0 ? k : -k));
    if (k >= 0) return Rat(p);
    Rat r(1, p);
    r.canonicalize();
    return r;
}

Int int_pow(const Int& base, unsigned long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
    return r;
}

bool is_p_integral(const Rat& x, long q) {
    if (x == 0) return true;
    return ord(Int(x.get_den()), q).value() == 0;
}

bool is_prime(long n) {
    if (n < 2) return false;
    Int m(n);
    return mpz_probab_prime_p(m.get_mpz_t(), 32) != 0;
}

std::string rat_to_decimal_pair(const Rat& x, std::string* den_out) {
    if (den_out) *den_out = x.get_den().get_str();
    return x.get_num().get_str();
}

}  // namespace eistheta::arith
