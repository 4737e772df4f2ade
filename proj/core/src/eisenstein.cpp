#include "eistheta/eisenstein.hpp"

#include "eistheta/bernoulli.hpp"
#include "eistheta/density.hpp"
#include "eistheta/invariants.hpp"
#include "eistheta/siegel_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace eistheta::eisenstein {

using arith::bernoulli;
using arith::gen_bernoulli;
using local_forms::fq_at_special;
using local_forms::fq_interpolate;
using local_forms::local_invariants;

QuadChar chi_t(const HalfIntSym& T) {
    int n = T.degree();
    if (n % 2 != 0) throw std::domain_error("chi_t: n must be even");
    Rat radicand(T.det_two_t());
    if ((n / 2) % 2 == 1) radicand = -radicand;
    return arith::quad_char_of_sqrt(radicand);
}

namespace {

std::vector<long> prime_divisors(const Int& x) {
    Int v = abs(x);
    std::vector<long> ps;
    for (long q = 2; Int(q) * q <= v; ++q) {
        if (v % q == 0) {
            ps.push_back(q);
            while (v % q == 0) v /= q;
        }
    }
    if (v > 1) ps.push_back(v.get_si());
    return ps;
}

}  // namespace

Rat eis_coeff(int n, long k, const HalfIntSym& T) {
    if (n < 1 || n > 4) throw std::domain_error("eis_coeff: n must be 1..4");
    if (k % 2 != 0 || k < n + 1) throw std::domain_error("eis_coeff: need k even, k > n");
    if (!T.is_positive_definite()) throw std::domain_error("eis_coeff: T must be positive definite");
    arith::bernoulli_reserve(static_cast<unsigned long>(2 * k));

    Rat c = ((n + 1) / 2) % 2 ? Rat(-1) : Rat(1);
    c *= arith::rat_pow(2, n - n / 2);
    c *= Rat(k) / bernoulli(static_cast<unsigned long>(k));
    for (int i = 1; i <= n / 2; ++i)
        c *= Rat(2 * k - 2 * i) / bernoulli(static_cast<unsigned long>(2 * k - 2 * i));
    if (n % 2 == 0) {
        QuadChar chi = chi_t(T);
        c *= gen_bernoulli(static_cast<unsigned long>(k - n / 2), chi) / Rat(k - n / 2);
    }
    auto divisors = prime_divisors(T.det_two_t());
    for (long q : divisors) {
        local_forms::FqPoly F = fq_interpolate(T, q);
        c *= F.eval(arith::rat_pow(q, k - n - 1));
    }
    // the product is truncated to q | det(2T); assert (not assume) that the
    // next prime outside the support contributes the constant polynomial 1
    long spare = 2;
    while (!arith::is_prime(spare) ||
           std::find(divisors.begin(), divisors.end(), spare) != divisors.end())
        ++spare;
    local_forms::FqPoly spare_poly = fq_interpolate(T, spare);
    if (spare_poly.degree() != 0)
        throw std::logic_error("eis_coeff: F_q nontrivial away from det(2T) at q=" +
                               std::to_string(spare));
    return c;
}

Rat limit_eis2_coeff(int n, long p, const HalfIntSym& T) {
    if (p == 2 || !arith::is_prime(p)) throw std::domain_error("limit_eis2_coeff: p must be odd prime");
    if (!T.is_positive_definite())
        throw std::domain_error("limit_eis2_coeff: T must be positive definite");
    if (n == 3) {
        Rat prod(1);
        for (long q : prime_divisors(T.det_two_t()))
            if (q != p) prod *= fq_at_special(T, q);
        Rat value = Rat(576) * prod / (Rat(1 - p) * Rat(1 - p));
        if (local_invariants(T, p).eta == 1 && value != 0)
            throw std::logic_error("limit_eis2_coeff: eta_p = 1 but product route is nonzero");
        return value;
    }
    if (n == 4) {
        Int d2t = T.det_two_t();
        Int s;
        mpz_sqrt(s.get_mpz_t(), d2t.get_mpz_t());
        if (s * s != d2t) return Rat(0);
        Rat prod(1);
        for (long q : prime_divisors(d2t))
            if (q != p) prod *= fq_at_special(T, q);
        Rat value = Rat(1152) * prod / (Rat(1 - p) * Rat(1 - p));
        bool vanish = (arith::ord(d2t, p).value() == 0) || (local_invariants(T, p).eta == 1);
        if (vanish && value != 0)
            throw std::logic_error("limit_eis2_coeff: vanishing case but product route is nonzero");
        return value;
    }
    throw std::domain_error("limit_eis2_coeff: n must be 3 or 4");
}

long weight_km(long p, int m) {
    long km = 2;
    long pw = 1;
    for (int i = 1; i < m; ++i) pw *= p;
    km += (p - 1) * pw;
    return km;
}

LimitReport limit_report(int n, long p, const HalfIntSym& T, int m_terms) {
    if (m_terms < 2) throw std::domain_error("limit_report: need at least two terms");
    LimitReport rep;
    if (n == 3 || n == 4) {
        rep.target = limit_eis2_coeff(n, p, T);
        rep.has_target = true;
    }
    for (int m = 1; m <= m_terms; ++m) {
        long km = weight_km(p, m);
        rep.weights.push_back(km);
        rep.terms.push_back(eis_coeff(n, km, T));
    }
    for (int m = 0; m + 1 < m_terms; ++m)
        rep.cauchy_orders.push_back(
            arith::padic_distance_order(rep.terms[static_cast<size_t>(m + 1)],
                                        rep.terms[static_cast<size_t>(m)], p));
    if (rep.has_target)
        for (const Rat& t : rep.terms)
            rep.distance_to_target.push_back(arith::padic_distance_order(t, rep.target, p));
    return rep;
}

Rat a_factor(long k, int n, const HalfIntSym& T) {
    arith::bernoulli_reserve(static_cast<unsigned long>(2 * k));
    Rat c = Rat(k) / bernoulli(static_cast<unsigned long>(k));
    for (int i = 1; i <= n / 2; ++i)
        c *= Rat(k - i) / bernoulli(static_cast<unsigned long>(2 * k - 2 * i));
    if (n % 2 == 0) {
        QuadChar chi = chi_t(T);
        c *= gen_bernoulli(static_cast<unsigned long>(k - n / 2), chi) / Rat(k - n / 2);
    }
    return c;
}

CoeffTable theta_operator(const CoeffTable& table) {
    CoeffTable out;
    out.degree = table.degree;
    out.bound = table.bound;
    for (const auto& [T, v] : table.entries) out.entries[T] = v * T.det_t();
    return out;
}

CoeffTable siegel_phi(const CoeffTable& table) {
    if (table.degree < 1) throw std::domain_error("siegel_phi: degree must be >= 1");
    CoeffTable out;
    out.degree = table.degree - 1;
    out.bound = table.bound;
    for (const auto& key : global_forms::enumerate_keys(out.degree, out.bound, false)) {
        HalfIntSym padded = key.pad_with_zero();
        auto it = table.entries.find(padded);
        if (it == table.entries.end())
            throw std::runtime_error("siegel_phi: table is missing key " + padded.serialize());
        out.entries[key] = it->second;
    }
    return out;
}

CongruenceReport congruence_check(const CoeffTable& a, const CoeffTable& b, long p, long power) {
    CongruenceReport rep;
    for (const auto& [key, va] : a.entries) {
        auto it = b.entries.find(key);
        if (it == b.entries.end()) continue;
        const Rat& vb = it->second;
        if (!arith::is_p_integral(va, p) || !arith::is_p_integral(vb, p))
            throw std::domain_error("congruence_check: non-p-integral value at key " + key.serialize());
        ++rep.checked;
        auto o = arith::padic_distance_order(va, vb, p);
        if (!(o >= arith::Valuation::finite(power))) {
            rep.pass = false;
            rep.failures.emplace_back(key, o.is_infinite() ? -1 : o.value());
        }
    }
    if (rep.checked == 0) throw std::domain_error("congruence_check: no shared keys");
    return rep;
}

CoeffTable eis_table(int n, long k, long bound) {
    CoeffTable tab;
    tab.degree = n;
    tab.bound = bound;
    for (const auto& T : global_forms::enumerate_keys(n, bound, true)) tab.entries[T] = eis_coeff(n, k, T);
    return tab;
}

CoeffTable limit_eis2_table(int n, long p, long bound) {
    CoeffTable tab;
    tab.degree = n;
    tab.bound = bound;
    for (const auto& T : global_forms::enumerate_keys(n, bound, true))
        tab.entries[T] = limit_eis2_coeff(n, p, T);
    return tab;
}

}  // namespace eistheta::eisenstein
