#include "eistheta/characters.hpp"

#include "eistheta/bernoulli.hpp"

#include <cstdlib>
#include <stdexcept>

namespace eistheta::arith {

int kronecker(const Int& D, const Int& m) {
    return mpz_kronecker(D.get_mpz_t(), m.get_mpz_t());
}

int kronecker(long D, long m) { return kronecker(Int(D), Int(m)); }

QuadChar QuadChar::from_discriminant(long D) {
    long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw std::domain_error("QuadChar: discriminant must be 0 or 1 mod 4");
    return QuadChar{D, std::labs(D)};
}

long squarefree_part(const Rat& x) {
    if (x == 0) throw std::domain_error("squarefree_part: x = 0");
    Int n = x.get_num() * x.get_den();
    int sign = sgn(n) < 0 ? -1 : 1;
    n = abs(n);
    long s = 1;
    for (Int d(2); d * d <= n; ++d) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e % 2 == 1) s *= d.get_si();
    }
    s *= static_cast<long>(n.get_si());
    return sign * s;
}

QuadChar quad_char_of_sqrt(const Rat& x) {
    long s = squarefree_part(x);
    if (s == 1) return QuadChar::trivial();
    long r = ((s % 4) + 4) % 4;
    long D = (r == 1) ? s : 4 * s;
    return QuadChar::from_discriminant(D);
}

Rat gen_bernoulli(unsigned long k, const QuadChar& chi) {
    if (k == 0) throw std::domain_error("gen_bernoulli: k must be >= 1");
    if (chi.is_trivial()) return bernoulli(k);
    long f = chi.conductor;
    Rat acc(0);
    for (long a = 1; a <= f; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        Rat x(a, f);
        x.canonicalize();
        Rat v = bernoulli_poly(k, x);
        acc += c > 0 ? v : -v;
    }
    Rat fpow(1);
    for (unsigned long i = 1; i < k; ++i) fpow *= f;
    return fpow * acc;
}

}  // namespace eistheta::arith
