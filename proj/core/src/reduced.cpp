#include "eistheta/reduced.hpp"

#include <stdexcept>

namespace eistheta::local_forms {

namespace {

void rec_offdiag(ReducedMatrix& g, int i, int j,
                 const std::function<void(const ReducedMatrix&)>& fn) {
    int n = g.n;
    if (i >= n) {
        fn(g);
        return;
    }
    int ni = i, nj = j + 1;
    if (nj >= n) {
        ni = i + 1;
        nj = ni + 1;
    }
    Int bound = arith::int_pow(Int(g.q), static_cast<unsigned long>(g.diag_exp[j]));
    for (Int d(0); d < bound; ++d) {
        g.entries[static_cast<size_t>(i) * n + j] = d;
        if (nj >= n)
            fn(g);
        else
            rec_offdiag(g, ni, nj, fn);
    }
}

void rec_exponents(int n, long q, long remaining, int pos, std::vector<long>& exps,
                   const std::function<void(const ReducedMatrix&)>& fn) {
    if (pos == n) {
        if (remaining != 0) return;
        ReducedMatrix g;
        g.n = n;
        g.q = q;
        g.diag_exp = exps;
        g.entries.assign(static_cast<size_t>(n) * n, Int(0));
        for (int i = 0; i < n; ++i)
            g.entries[static_cast<size_t>(i) * n + i] =
                arith::int_pow(Int(q), static_cast<unsigned long>(exps[i]));
        if (n >= 2)
            rec_offdiag(g, 0, 1, fn);
        else
            fn(g);
        return;
    }
    for (long e = 0; e <= remaining; ++e) {
        exps[pos] = e;
        rec_exponents(n, q, remaining - e, pos + 1, exps, fn);
    }
}

}  // namespace

void for_each_reduced(int n, long q, long total_exponent,
                      const std::function<void(const ReducedMatrix&)>& fn) {
    if (total_exponent < 0) return;
    std::vector<long> exps(static_cast<size_t>(n), 0);
    rec_exponents(n, q, total_exponent, 0, exps, fn);
}

std::vector<ReducedMatrix> enumerate_reduced(int n, long q, long total_exponent) {
    std::vector<ReducedMatrix> out;
    for_each_reduced(n, q, total_exponent, [&](const ReducedMatrix& g) { out.push_back(g); });
    return out;
}

std::optional<HalfIntSym> transform_by_g_inverse(const HalfIntSym& T, const ReducedMatrix& g) {
    int n = T.degree();
    if (g.n != n) throw std::domain_error("transform_by_g_inverse: degree mismatch");
    // invert the upper-triangular g over Q by back substitution
    std::vector<Rat> inv(static_cast<size_t>(n) * n, Rat(0));
    auto gv = [&](int i, int j) { return Rat(g.entries[static_cast<size_t>(i) * n + j]); };
    auto iv = [&](int i, int j) -> Rat& { return inv[static_cast<size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        iv(j, j) = Rat(1) / gv(j, j);
        for (int i = j - 1; i >= 0; --i) {
            Rat s(0);
            for (int k = i + 1; k <= j; ++k) s += gv(i, k) * iv(k, j);
            iv(i, j) = -s / gv(i, i);
        }
    }
    // 2 * T[g^{-1}] = inv' (2T) inv
    std::vector<Rat> tmp(static_cast<size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s(0);
            for (int k = 0; k < n; ++k) s += Rat(T.two_t(i, k)) * iv(k, j);
            tmp[static_cast<size_t>(i) * n + j] = s;
        }
    std::vector<Int> res(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s(0);
            for (int k = 0; k < n; ++k) s += iv(k, i) * tmp[static_cast<size_t>(k) * n + j];
            if (s.get_den() != 1) return std::nullopt;
            res[static_cast<size_t>(i) * n + j] = s.get_num();
        }
    for (int i = 0; i < n; ++i)
        if (res[static_cast<size_t>(i) * n + i] % 2 != 0) return std::nullopt;
    return HalfIntSym::from_two_t(n, std::move(res));
}

bool is_maximal(const HalfIntSym& T, long q) {
    if (T.det_two_t() == 0) throw std::domain_error("is_maximal: degenerate T");
    bool maximal = true;
    for_each_reduced(T.degree(), q, 1, [&](const ReducedMatrix& g) {
        if (!maximal) return;
        if (transform_by_g_inverse(T, g)) maximal = false;
    });
    return maximal;
}

}  // namespace eistheta::local_forms
