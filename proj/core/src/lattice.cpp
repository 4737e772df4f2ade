#include "eistheta/lattice.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace eistheta::global_forms {

namespace {

// floor(sqrt(a/b)) for a,b > 0
Int floor_sqrt_rat(const Rat& x) {
    if (x < 0) throw std::domain_error("floor_sqrt_rat: negative");
    Int ab = x.get_num() * x.get_den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
    return s / x.get_den();
}

struct Cholesky {
    int m;
    std::vector<Rat> d;  // positive pivots
    std::vector<Rat> u;  // row-major unit upper-triangular multipliers
    const Rat& mu(int i, int j) const { return u[static_cast<size_t>(i) * m + j]; }
};

// 2S = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 decomposition
Cholesky cholesky(const HalfIntSym& S) {
    int m = S.degree();
    Cholesky c;
    c.m = m;
    std::vector<Rat> a(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[static_cast<size_t>(i) * m + j] = Rat(S.two_t(i, j));
    c.d.assign(static_cast<size_t>(m), Rat(0));
    c.u.assign(static_cast<size_t>(m) * m, Rat(0));
    for (int i = 0; i < m; ++i) {
        Rat piv = a[static_cast<size_t>(i) * m + i];
        if (piv <= 0) throw std::domain_error("cholesky: S not positive definite");
        c.d[static_cast<size_t>(i)] = piv;
        for (int j = i + 1; j < m; ++j) c.u[static_cast<size_t>(i) * m + j] = a[static_cast<size_t>(i) * m + j] / piv;
        for (int k = i + 1; k < m; ++k)
            for (int l = i + 1; l < m; ++l)
                a[static_cast<size_t>(k) * m + l] -=
                    a[static_cast<size_t>(i) * m + k] * a[static_cast<size_t>(i) * m + l] / piv;
    }
    return c;
}

// enumerate x with x'(2S)x = 2t by backtracking from the last coordinate
void enum_vectors(const Cholesky& c, const Int& two_t, std::vector<std::vector<long>>& out) {
    int m = c.m;
    std::vector<long> x(static_cast<size_t>(m), 0);
    std::vector<Rat> center(static_cast<size_t>(m), Rat(0));
    // rec(i): coordinates x_{i+1..m-1} fixed; budget = remaining quadratic mass
    std::function<void(int, const Rat&)> rec = [&](int i, const Rat& budget) {
        if (i < 0) {
            if (budget == 0) out.push_back(x);
            return;
        }
        // center_i = sum_{j>i} mu_ij x_j
        Rat ci(0);
        for (int j = i + 1; j < m; ++j)
            if (x[static_cast<size_t>(j)] != 0) ci += c.mu(i, j) * x[static_cast<size_t>(j)];
        // d_i (x_i + ci)^2 <= budget
        Rat r = budget / c.d[static_cast<size_t>(i)];
        Int lo, hi;
        {
            Int s = floor_sqrt_rat(r);
            // x_i in [ceil(-ci - sqrt r), floor(-ci + sqrt r)]; sqrt r is
            // irrational in general, use s = floor(sqrt r) and widen by one
            Rat lo_r = -ci - Rat(s) - 1;
            Rat hi_r = -ci + Rat(s) + 1;
            lo = Int(lo_r.get_num() / lo_r.get_den());
            hi = Int(hi_r.get_num() / hi_r.get_den());
            lo -= 2;
            hi += 2;
        }
        for (Int xi = lo; xi <= hi; ++xi) {
            Rat term = Rat(xi) + ci;
            Rat used = c.d[static_cast<size_t>(i)] * term * term;
            if (used > budget) continue;
            x[static_cast<size_t>(i)] = xi.get_si();
            rec(i - 1, budget - used);
        }
        x[static_cast<size_t>(i)] = 0;
    };
    rec(m - 1, Rat(two_t));
}

}  // namespace

std::vector<std::vector<long>> short_vectors(const HalfIntSym& S, const Int& t) {
    std::vector<std::vector<long>> out;
    if (t < 0) return out;
    if (t == 0) {
        out.push_back(std::vector<long>(static_cast<size_t>(S.degree()), 0));
        return out;
    }
    Cholesky c = cholesky(S);
    enum_vectors(c, Int(2 * t), out);
    std::sort(out.begin(), out.end());
    return out;
}

Int rep_count(const HalfIntSym& S, const HalfIntSym& T, int threads) {
    int m = S.degree(), n = T.degree();
    if (!S.is_positive_definite()) throw std::domain_error("rep_count: S must be positive definite");
    if (n > m && T.is_positive_definite()) return Int(0);  // rank obstruction
    // candidates per column: S[x] = T_jj
    std::vector<std::vector<std::vector<long>>> cand(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        Int tjj = T.two_t(j, j) / 2;
        if (tjj < 0) return Int(0);
        cand[static_cast<size_t>(j)] = short_vectors(S, tjj);
    }
    // backtrack over columns checking cross products x_i'(2S)x_j = (2T)_ij
    std::vector<const std::vector<long>*> chosen(static_cast<size_t>(n), nullptr);
    std::function<Int(int)> rec = [&](int col) -> Int {
        if (col == n) return Int(1);
        Int acc(0);
        for (const auto& x : cand[static_cast<size_t>(col)]) {
            bool ok = true;
            for (int i = 0; i < col && ok; ++i) {
                Int ip(0);
                const auto& xi = *chosen[static_cast<size_t>(i)];
                for (int r = 0; r < m; ++r) {
                    if (xi[static_cast<size_t>(r)] == 0) continue;
                    Int row(0);
                    for (int s2 = 0; s2 < m; ++s2)
                        row += S.two_t(r, s2) * x[static_cast<size_t>(s2)];
                    ip += xi[static_cast<size_t>(r)] * row;
                }
                if (ip != T.two_t(i, col)) ok = false;
            }
            if (!ok) continue;
            chosen[static_cast<size_t>(col)] = &x;
            acc += rec(col + 1);
        }
        chosen[static_cast<size_t>(col)] = nullptr;
        return acc;
    };
    if (threads <= 1 || n == 0 || cand[0].size() < 2) return rec(0);
    // deterministic split over first-column candidates
    const auto& first = cand[0];
    std::vector<Int> partial(first.size(), Int(0));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    int nt = std::min<int>(threads, static_cast<int>(first.size()));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&]() {
            // each worker owns an independent chosen-stack
            std::vector<const std::vector<long>*> ch(static_cast<size_t>(n), nullptr);
            std::function<Int(int)> lrec = [&](int col) -> Int {
                if (col == n) return Int(1);
                Int acc(0);
                for (const auto& x : cand[static_cast<size_t>(col)]) {
                    bool ok = true;
                    for (int i = 0; i < col && ok; ++i) {
                        Int ip(0);
                        const auto& xi = *ch[static_cast<size_t>(i)];
                        for (int r = 0; r < m; ++r) {
                            if (xi[static_cast<size_t>(r)] == 0) continue;
                            Int row(0);
                            for (int s2 = 0; s2 < m; ++s2)
                                row += S.two_t(r, s2) * x[static_cast<size_t>(s2)];
                            ip += xi[static_cast<size_t>(r)] * row;
                        }
                        if (ip != T.two_t(i, col)) ok = false;
                    }
                    if (!ok) continue;
                    ch[static_cast<size_t>(col)] = &x;
                    acc += lrec(col + 1);
                }
                ch[static_cast<size_t>(col)] = nullptr;
                return acc;
            };
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= first.size()) break;
                ch[0] = &first[i];
                partial[i] = lrec(1);
            }
        });
    }
    for (auto& th : pool) th.join();
    Int total(0);
    for (const auto& p : partial) total += p;
    return total;
}

Int aut_count(const HalfIntSym& S) { return rep_count(S, S); }

std::vector<HalfIntSym> enumerate_keys(int n, long bound, bool positive_definite_only) {
    std::vector<HalfIntSym> keys;
    // 2T: even diagonal 0..2*bound, off-diagonal |t_ij| < sqrt(d_i d_j)
    std::vector<long> diag(static_cast<size_t>(n), 0);
    std::vector<long> off(static_cast<size_t>(n) * n, 0);
    std::function<void(int)> off_rec;
    std::function<void(int)> diag_rec = [&](int i) {
        if (i == n) {
            off_rec(0);
            return;
        }
        for (long d = 0; d <= 2 * bound; d += 2) {
            diag[static_cast<size_t>(i)] = d;
            diag_rec(i + 1);
        }
    };
    // positions (i,j), i<j in row-major order
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pos.emplace_back(i, j);
    off_rec = [&](int pi) {
        if (pi == static_cast<int>(pos.size())) {
            std::vector<Int> e(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = diag[static_cast<size_t>(i)];
            for (auto [i, j] : pos) {
                e[static_cast<size_t>(i) * n + j] = off[static_cast<size_t>(i) * n + j];
                e[static_cast<size_t>(j) * n + i] = off[static_cast<size_t>(i) * n + j];
            }
            HalfIntSym T = HalfIntSym::from_two_t(n, std::move(e));
            if (positive_definite_only ? T.is_positive_definite() : T.is_positive_semidefinite())
                keys.push_back(std::move(T));
            return;
        }
        auto [i, j] = pos[static_cast<size_t>(pi)];
        long di = diag[static_cast<size_t>(i)], dj = diag[static_cast<size_t>(j)];
        long lim = 0;
        while ((lim + 1) * (lim + 1) <= di * dj) ++lim;
        for (long v = -lim; v <= lim; ++v) {
            off[static_cast<size_t>(i) * n + j] = v;
            off_rec(pi + 1);
        }
        off[static_cast<size_t>(i) * n + j] = 0;
    };
    diag_rec(0);
    std::sort(keys.begin(), keys.end());
    return keys;
}

CoeffTable theta_table(const HalfIntSym& S, int n, long bound, int threads) {
    CoeffTable tab;
    tab.degree = n;
    tab.bound = bound;
    auto keys = enumerate_keys(n, bound, false);
    for (const auto& T : keys) tab.entries[T] = Rat(rep_count(S, T, threads));
    return tab;
}

}  // namespace eistheta::global_forms
