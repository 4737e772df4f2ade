#include "eistheta/bernoulli.hpp"

#include <mutex>
#include <shared_mutex>
#include <vector>

namespace eistheta::arith {

namespace {

// Tangent numbers T_1..T_N by the Knuth–Buckholtz triangle; B_{2n} is then
// recovered as (-1)^(n-1) * 2n * T_n / (4^n (4^n - 1)).  Integer DP is far
// cheaper than the direct rational recurrence at the indices we reach
// (2k_3 - 2 is ~2400 for p = 11).
std::vector<Int> tangent_numbers(unsigned long n) {
    std::vector<Int> t(n + 1);
    if (n >= 1) t[1] = 1;
    for (unsigned long k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
    for (unsigned long k = 2; k <= n; ++k)
        for (unsigned long j = k; j <= n; ++j)
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    return t;
}

struct BernoulliTable {
    std::shared_mutex mtx;
    // even_b[n] = B_{2n}
    std::vector<Rat> even_b{Rat(1)};

    Rat get_even(unsigned long n) {
        {
            std::shared_lock lk(mtx);
            if (n < even_b.size()) return even_b[n];
        }
        std::unique_lock lk(mtx);
        if (n >= even_b.size()) {
            auto t = tangent_numbers(n);
            std::vector<Rat> nb(n + 1);
            nb[0] = Rat(1);
            for (unsigned long j = 1; j <= n; ++j) {
                Int four_j = int_pow(Int(4), j);
                Rat b(2 * static_cast<long>(j) * t[j], four_j * (four_j - 1));
                b.canonicalize();
                if (j % 2 == 0) b = -b;
                nb[j] = b;
            }
            even_b = std::move(nb);
        }
        return even_b[n];
    }
};

BernoulliTable& table() {
    static BernoulliTable t;
    return t;
}

}  // namespace

Rat bernoulli(unsigned long k) {
    if (k == 0) return Rat(1);
    if (k == 1) return Rat(-1, 2);
    if (k % 2 == 1) return Rat(0);
    return table().get_even(k / 2);
}

void bernoulli_reserve(unsigned long k) {
    if (k >= 2) table().get_even(k / 2);
}

Rat bernoulli_poly(unsigned long k, const Rat& x) {
    // B_k(x) = sum_j C(k,j) B_j x^(k-j)
    Rat acc(0);
    Rat xpow(1);
    Int binom(1);
    // iterate j = k down to 0 so x-powers build up incrementally
    std::vector<Rat> bs(k + 1);
    for (unsigned long j = 0; j <= k; ++j) bs[j] = bernoulli(j);
    for (unsigned long d = 0; d <= k; ++d) {
        unsigned long j = k - d;  // x^(k-j) = x^d
        Int c;
        mpz_bin_uiui(c.get_mpz_t(), k, j);
        acc += Rat(c) * bs[j] * xpow;
        xpow *= x;
    }
    return acc;
}

}  // namespace eistheta::arith
