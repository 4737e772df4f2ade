#include "eistheta/half_integral.hpp"

#include "eistheta/hilbert.hpp"

#include <sstream>
#include <stdexcept>

namespace eistheta {

HalfIntSym HalfIntSym::from_two_t(int n, std::vector<Int> entries) {
    if (static_cast<int>(entries.size()) != n * n)
        throw std::domain_error("HalfIntSym: wrong entry count");
    for (int i = 0; i < n; ++i) {
        if (entries[static_cast<size_t>(i) * n + i] % 2 != 0)
            throw std::domain_error("HalfIntSym: diagonal of 2T must be even");
        for (int j = 0; j < i; ++j)
            if (entries[static_cast<size_t>(i) * n + j] != entries[static_cast<size_t>(j) * n + i])
                throw std::domain_error("HalfIntSym: 2T must be symmetric");
    }
    HalfIntSym t;
    t.n_ = n;
    t.e_ = std::move(entries);
    return t;
}

HalfIntSym HalfIntSym::diag(const std::vector<long>& d) {
    int n = static_cast<int>(d.size());
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = 2 * d[i];
    return from_two_t(n, std::move(e));
}

Int int_det(const std::vector<Int>& a, int n) {
    if (n == 0) return Int(1);
    std::vector<Int> m = a;
    auto at = [&](int i, int j) -> Int& { return m[static_cast<size_t>(i) * n + j]; };
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    Int d = at(n - 1, n - 1);
    return sign > 0 ? d : Int(-d);
}

Int HalfIntSym::det_two_t() const { return int_det(e_, n_); }

Rat HalfIntSym::det_t() const {
    Rat r(det_two_t());
    for (int i = 0; i < n_; ++i) r /= 2;
    return r;
}

bool HalfIntSym::is_positive_definite() const {
    // leading principal minors of 2T all positive
    for (int k = 1; k <= n_; ++k) {
        std::vector<Int> sub;
        sub.reserve(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.push_back(two_t(i, j));
        if (int_det(sub, k) <= 0) return false;
    }
    return true;
}

bool HalfIntSym::is_positive_semidefinite() const {
    // all principal minors of 2T nonnegative
    for (int mask = 1; mask < (1 << n_); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        int k = static_cast<int>(idx.size());
        std::vector<Int> sub;
        sub.reserve(static_cast<size_t>(k) * k);
        for (int i : idx)
            for (int j : idx) sub.push_back(two_t(i, j));
        if (int_det(sub, k) < 0) return false;
    }
    return true;
}

HalfIntSym HalfIntSym::transform(const std::vector<Int>& U) const {
    // 2*(T[U]) = U' (2T) U
    int n = n_;
    if (static_cast<int>(U.size()) != n * n)
        throw std::domain_error("transform: U must be n x n");
    std::vector<Int> tu(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s(0);
            for (int k = 0; k < n; ++k) s += two_t(i, k) * U[static_cast<size_t>(k) * n + j];
            tu[static_cast<size_t>(i) * n + j] = s;
        }
    std::vector<Int> r(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s(0);
            for (int k = 0; k < n; ++k) s += U[static_cast<size_t>(k) * n + i] * tu[static_cast<size_t>(k) * n + j];
            r[static_cast<size_t>(i) * n + j] = s;
        }
    return from_two_t(n, std::move(r));
}

HalfIntSym HalfIntSym::direct_sum(const HalfIntSym& other) const {
    int n = n_ + other.n_;
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) e[static_cast<size_t>(i) * n + j] = two_t(i, j);
    for (int i = 0; i < other.n_; ++i)
        for (int j = 0; j < other.n_; ++j)
            e[static_cast<size_t>(n_ + i) * n + (n_ + j)] = other.two_t(i, j);
    return from_two_t(n, std::move(e));
}

HalfIntSym HalfIntSym::principal_submatrix(const std::vector<int>& idx) const {
    int k = static_cast<int>(idx.size());
    std::vector<Int> e;
    e.reserve(static_cast<size_t>(k) * k);
    for (int i : idx)
        for (int j : idx) e.push_back(two_t(i, j));
    return from_two_t(k, std::move(e));
}

HalfIntSym HalfIntSym::pad_with_zero() const {
    int n = n_ + 1;
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) e[static_cast<size_t>(i) * n + j] = two_t(i, j);
    return from_two_t(n, std::move(e));
}

std::string HalfIntSym::serialize() const {
    std::ostringstream os;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (i) os << ',';
        os << e_[i].get_str();
    }
    return os.str();
}

HalfIntSym HalfIntSym::deserialize(int n, const std::string& s) {
    std::vector<Int> e;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) e.emplace_back(tok);
    return from_two_t(n, std::move(e));
}

std::vector<Rat> diagonalize_form(const HalfIntSym& T) {
    int n = T.degree();
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v(T.two_t(i, j), 2);
            v.canonicalize();
            a[static_cast<size_t>(i) * n + j] = v;
        }
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<Rat> out;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, i) != 0) { piv = i; break; }
            if (piv >= 0) {
                for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
                for (int i = 0; i < n; ++i) std::swap(at(i, k), at(i, piv));
            } else {
                int off = -1;
                for (int j = k + 1; j < n; ++j)
                    if (at(k, j) != 0) { off = j; break; }
                if (off < 0) throw std::domain_error("diagonalize_form: degenerate form");
                // merge row/col `off` into k: diagonal picks up 2 a_{k,off}
                for (int j = 0; j < n; ++j) at(k, j) += at(off, j);
                for (int i = 0; i < n; ++i) at(i, k) += at(i, off);
            }
        }
        Rat piv = at(k, k);
        for (int i = k + 1; i < n; ++i) {
            Rat f = at(i, k) / piv;
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) at(i, j) -= f * at(k, j);
            for (int j = 0; j < n; ++j) at(j, i) -= f * at(j, k);
        }
        out.push_back(piv);
    }
    return out;
}

HalfIntSym hyperbolic(int k) {
    int n = 2 * k;
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int b = 0; b < k; ++b) {
        e[static_cast<size_t>(2 * b) * n + (2 * b + 1)] = 1;
        e[static_cast<size_t>(2 * b + 1) * n + 2 * b] = 1;
    }
    return HalfIntSym::from_two_t(n, std::move(e));
}

HalfIntSym u0(long p) {
    long eps = 1;
    while (arith::chi_q(Rat(-eps), p) != -1) ++eps;
    return HalfIntSym::diag({1, eps});
}

HalfIntSym u0_perp_pu0(long p) {
    HalfIntSym u = u0(p);
    long eps = u.two_t(1, 1).get_si() / 2;
    return HalfIntSym::diag({1, eps, p, p * eps});
}

}  // namespace eistheta
