#include "eistheta/fq_count.hpp"

#include "eistheta/hilbert.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace eistheta::local_forms {

namespace {

long md(long a, long q) {
    long r = a % q;
    return r < 0 ? r + q : r;
}

long md(const Int& a, long q) {
    Int r = a % q;
    if (r < 0) r += q;
    return r.get_si();
}

long inv_mod(long a, long q) {
    Int r;
    Int am(md(a, q)), qm(q);
    if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), qm.get_mpz_t()) == 0)
        throw std::domain_error("inv_mod: not invertible");
    return r.get_si();
}

// ---------------------------------------------------------------------------
// odd q: Witt recursion on diagonalized targets
// ---------------------------------------------------------------------------

// #\{x in a d-dim nondegenerate space over F_q with disc chi-value s :
//    Q(x) = c\}, with (c_zero, chi_c) describing the target value.
Int vec_count_odd(int d, int s, long q, bool c_zero, int chi_c) {
    if (d == 0) return Int(c_zero ? 1 : 0);
    int chi_m1 = (q % 4 == 1) ? 1 : -1;
    Int qd1 = arith::int_pow(Int(q), static_cast<unsigned long>(d - 1));
    if (d % 2 == 0) {
        int delta = ((d / 2) % 2 ? chi_m1 : 1) * s;  // chi((-1)^{d/2} disc)
        Int half = arith::int_pow(Int(q), static_cast<unsigned long>(d / 2 - 1));
        if (c_zero) return qd1 + (q - 1) * half * delta;
        return qd1 - half * delta;
    }
    if (c_zero) return qd1;
    int delta = (((d - 1) / 2) % 2 ? chi_m1 : 1) * s * chi_c;
    Int half = arith::int_pow(Int(q), static_cast<unsigned long>((d - 1) / 2));
    return qd1 + half * delta;
}

// tuples in the d-dim space with pairwise-orthogonal columns of prescribed
// norms c[pos..]; s = chi(disc)
Int count_odd_diag(int d, int s, long q, const std::vector<long>& c, size_t pos) {
    if (pos == c.size()) return Int(1);
    size_t k = c.size() - pos;
    int chi_m1 = (q % 4 == 1) ? 1 : -1;
    long c0 = md(c[pos], q);
    if (c0 != 0) {
        int chi_c = arith::legendre(Int(c0), q);
        Int head = vec_count_odd(d, s, q, false, chi_c);
        if (head == 0) return Int(0);
        return head * count_odd_diag(d - 1, s * chi_c, q, c, pos + 1);
    }
    // c0 = 0: either x1 = 0, or x1 isotropic nonzero (split a hyperbolic
    // plane; the coefficients along the isotropic vector stay free)
    Int total = count_odd_diag(d, s, q, c, pos + 1);
    if (d >= 2) {
        Int iso = vec_count_odd(d, s, q, true, 0) - 1;
        if (iso > 0) {
            Int alphas = arith::int_pow(Int(q), static_cast<unsigned long>(k - 1));
            total += iso * alphas * count_odd_diag(d - 2, s * chi_m1, q, c, pos + 1);
        }
    }
    return total;
}

// congruence-diagonalization of a symmetric matrix over F_q, odd q
std::vector<long> diagonalize_fq(std::vector<long> a, int n, long q) {
    auto at = [&](int i, int j) -> long& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<long> out;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) % q == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, i) % q != 0) { piv = i; break; }
            if (piv >= 0) {
                for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
                for (int i = 0; i < n; ++i) std::swap(at(i, k), at(i, piv));
            } else {
                int off = -1;
                for (int j = k + 1; j < n; ++j)
                    if (at(k, j) % q != 0) { off = j; break; }
                if (off >= 0) {
                    for (int j = 0; j < n; ++j) at(k, j) = md(at(k, j) + at(off, j), q);
                    for (int i = 0; i < n; ++i) at(i, k) = md(at(i, k) + at(i, off), q);
                }
            }
        }
        long piv = md(at(k, k), q);
        if (piv != 0) {
            long inv = inv_mod(piv, q);
            for (int i = k + 1; i < n; ++i) {
                long f = md(at(i, k) * inv, q);
                if (f == 0) continue;
                for (int j = 0; j < n; ++j) at(i, j) = md(at(i, j) - f * at(k, j), q);
                for (int j = 0; j < n; ++j) at(j, i) = md(at(j, i) - f * at(j, k), q);
            }
        }
        out.push_back(piv);
    }
    return out;
}

Int gram_count_odd(const HalfIntSym& S, std::vector<long> targets, int n, long q) {
    int m = S.degree();
    long detg = md(int_det(S.two_t_entries(), m), q);
    if (detg == 0) throw std::domain_error("fq_gram_count: S not unimodular at q");
    int s = arith::legendre(Int(detg), q);
    std::vector<long> diag = diagonalize_fq(std::move(targets), n, q);
    return count_odd_diag(m, s, q, diag, 0);
}

// ---------------------------------------------------------------------------
// q = 2: symplectic pairing + Arf invariant
// ---------------------------------------------------------------------------

struct TwoAdicTargets {
    int n = 0;
    std::vector<int> bil;   // row-major n*n bilinear targets, zero diagonal
    std::vector<int> quad;  // quadratic (diagonal) targets
    int b(int i, int j) const { return bil[static_cast<size_t>(i) * n + j]; }
};

TwoAdicTargets drop_first(const TwoAdicTargets& t) {
    TwoAdicTargets r;
    r.n = t.n - 1;
    r.quad.assign(t.quad.begin() + 1, t.quad.end());
    r.bil.assign(static_cast<size_t>(r.n) * r.n, 0);
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) r.bil[static_cast<size_t>(i) * r.n + j] = t.b(i + 1, j + 1);
    return r;
}

// nonzero vectors with Q = t in the 2j-dim space with Arf invariant delta
Int vec_count_two(int j, int delta, int t) {
    if (j == 0) return Int(0);
    Int a = arith::int_pow(Int(2), static_cast<unsigned long>(2 * j - 1));
    Int b = arith::int_pow(Int(2), static_cast<unsigned long>(j - 1));
    Int n0 = a;  // count with Q = 0, including x = 0
    if (delta)
        n0 -= b;
    else
        n0 += b;
    if (t == 0) return n0 - 1;
    Int all = arith::int_pow(Int(2), static_cast<unsigned long>(2 * j));
    return all - n0;
}

Int count_two(int j, int delta, const TwoAdicTargets& t) {
    int k = t.n;
    if (k == 0) return Int(1);
    Int total(0);
    // x1 = 0
    {
        bool ok = t.quad[0] == 0;
        for (int i = 1; i < k && ok; ++i)
            if (t.b(0, i) != 0) ok = false;
        if (ok) total += count_two(j, delta, drop_first(t));
    }
    if (j == 0) return total;
    for (int t0 = 0; t0 <= 1; ++t0) {
        if (t.quad[0] != t0) continue;
        Int head = vec_count_two(j, delta, t0);
        if (head == 0) continue;
        // partner y with B(x1,y) = 1; Q(y) can be normalized to 0 except in
        // the anisotropic bottom j = 1, Arf = 1
        int qy = (t0 == 1 && j == 1 && delta == 1) ? 1 : 0;
        int delta2 = delta ^ (t0 & qy);
        std::vector<int> bvec(static_cast<size_t>(k), 0);
        for (int i = 1; i < k; ++i) bvec[static_cast<size_t>(i)] = t.b(0, i);
        Int inner(0);
        int na = k - 1;
        for (int mask = 0; mask < (1 << na); ++mask) {
            TwoAdicTargets z = drop_first(t);
            for (int i = 1; i < k; ++i) {
                int ai = (mask >> (i - 1)) & 1;
                int bi = bvec[static_cast<size_t>(i)];
                z.quad[static_cast<size_t>(i - 1)] ^= (ai & t0) ^ (bi & qy) ^ (ai & bi);
            }
            for (int i = 1; i < k; ++i)
                for (int l = i + 1; l < k; ++l) {
                    int ai = (mask >> (i - 1)) & 1, al = (mask >> (l - 1)) & 1;
                    int shift = (ai & bvec[static_cast<size_t>(l)]) ^ (al & bvec[static_cast<size_t>(i)]);
                    z.bil[static_cast<size_t>(i - 1) * z.n + (l - 1)] ^= shift;
                    z.bil[static_cast<size_t>(l - 1) * z.n + (i - 1)] ^= shift;
                }
            inner += count_two(j - 1, delta2, z);
        }
        total += head * inner;
    }
    return total;
}

// symplectic reduction of 2S mod 2: hyperbolic pair count and the Arf
// invariant of x -> x'Sx mod 2
void two_adic_space(const HalfIntSym& S, int* pairs, int* arf) {
    int m = S.degree();
    if (m % 2 != 0)
        throw std::domain_error("two_adic_space: odd dimension is not unimodular at 2");
    auto bil = [&](const std::vector<int>& u, const std::vector<int>& v) {
        long s = 0;
        for (int i = 0; i < m; ++i) {
            if (!u[static_cast<size_t>(i)]) continue;
            for (int j = 0; j < m; ++j)
                if (v[static_cast<size_t>(j)]) s += md(S.two_t(i, j), 2);
        }
        return static_cast<int>(s % 2);
    };
    auto quad = [&](const std::vector<int>& u) {
        long s = 0;
        for (int i = 0; i < m; ++i) {
            if (!u[static_cast<size_t>(i)]) continue;
            s += md(S.two_t(i, i) / 2, 2);
            for (int j = i + 1; j < m; ++j)
                if (u[static_cast<size_t>(j)]) s += md(S.two_t(i, j), 2);
        }
        return static_cast<int>(s % 2);
    };
    std::vector<std::vector<int>> basis;
    for (int i = 0; i < m; ++i) {
        std::vector<int> e(static_cast<size_t>(m), 0);
        e[static_cast<size_t>(i)] = 1;
        basis.push_back(e);
    }
    int a = 0, k = 0;
    while (!basis.empty()) {
        auto u = basis.front();
        int pi = -1;
        for (size_t i = 1; i < basis.size(); ++i)
            if (bil(u, basis[i])) { pi = static_cast<int>(i); break; }
        if (pi < 0)
            throw std::domain_error("two_adic_space: degenerate pairing (S not unimodular at 2)");
        auto v = basis[static_cast<size_t>(pi)];
        a ^= quad(u) & quad(v);
        ++k;
        std::vector<std::vector<int>> next;
        for (size_t i = 1; i < basis.size(); ++i) {
            if (static_cast<int>(i) == pi) continue;
            auto w = basis[i];
            int cu = bil(w, v), cv = bil(w, u);
            for (int c = 0; c < m; ++c)
                w[static_cast<size_t>(c)] =
                    (w[static_cast<size_t>(c)] + cu * u[static_cast<size_t>(c)] + cv * v[static_cast<size_t>(c)]) % 2;
            next.push_back(std::move(w));
        }
        basis = std::move(next);
    }
    *pairs = k;
    *arf = a;
}

TwoAdicTargets two_targets(const HalfIntSym& T) {
    TwoAdicTargets t;
    t.n = T.degree();
    t.bil.assign(static_cast<size_t>(t.n) * t.n, 0);
    t.quad.assign(static_cast<size_t>(t.n), 0);
    for (int i = 0; i < t.n; ++i) {
        t.quad[static_cast<size_t>(i)] = static_cast<int>(md(T.two_t(i, i) / 2, 2));
        for (int j = 0; j < t.n; ++j)
            if (i != j)
                t.bil[static_cast<size_t>(i) * t.n + j] = static_cast<int>(md(T.two_t(i, j), 2));
    }
    return t;
}

Int gram_count_two(const HalfIntSym& S, const TwoAdicTargets& t) {
    int pairs, arf;
    two_adic_space(S, &pairs, &arf);
    return count_two(pairs, arf, t);
}

std::vector<long> symmetric_targets_mod_q(const HalfIntSym& T, long q) {
    int n = T.degree();
    std::vector<long> v(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = md(T.two_t(i, j), q);
    return v;
}

// ---------------------------------------------------------------------------
// primitivity via subspace Moebius inversion over the radical of T mod q
// ---------------------------------------------------------------------------

// basis of {v : (2T)v = 0 mod q, and for q = 2 additionally v'Tv = 0 mod 2}
std::vector<std::vector<long>> radical_mod_q(const HalfIntSym& T, long q) {
    int n = T.degree();
    std::vector<std::vector<long>> rows(static_cast<size_t>(n),
                                        std::vector<long>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = md(T.two_t(i, j), q);
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(piv)]);
        long inv = inv_mod(rows[static_cast<size_t>(r)][static_cast<size_t>(c)], q);
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                md(rows[static_cast<size_t>(r)][static_cast<size_t>(j)] * inv, q);
        for (int i = 0; i < n; ++i) {
            if (i == r) continue;
            long f = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = md(
                    rows[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                        f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)],
                    q);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<long>> kernel;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        std::vector<long> v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(c)] = 1;
        for (int i = 0; i < r; ++i)
            v[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
                md(-rows[static_cast<size_t>(i)][static_cast<size_t>(c)], q);
        kernel.push_back(v);
    }
    if (q != 2) return kernel;
    auto qform = [&](const std::vector<long>& v) {
        long s = 0;
        for (int i = 0; i < n; ++i) {
            if (!(v[static_cast<size_t>(i)] & 1)) continue;
            s += md(T.two_t(i, i) / 2, 2);
            for (int j = i + 1; j < n; ++j)
                if (v[static_cast<size_t>(j)] & 1) s += md(T.two_t(i, j), 2);
        }
        return s % 2;
    };
    std::vector<std::vector<long>> good, bad;
    for (auto& v : kernel) (qform(v) == 0 ? good : bad).push_back(v);
    for (size_t i = 1; i < bad.size(); ++i) {
        std::vector<long> w(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c)
            w[static_cast<size_t>(c)] =
                (bad[i][static_cast<size_t>(c)] + bad[0][static_cast<size_t>(c)]) % 2;
        good.push_back(std::move(w));
    }
    return good;
}

// every subspace of span(basis), via unique RREF coefficient matrices
void for_each_subspace(
    const std::vector<std::vector<long>>& basis, long q, int n,
    const std::function<void(const std::vector<std::vector<long>>&, int)>& fn) {
    int s = static_cast<int>(basis.size());
    fn({}, 0);
    for (int r = 1; r <= s; ++r) {
        std::vector<int> pivots(static_cast<size_t>(r));
        std::function<void(int, int)> choose = [&](int pos, int start) {
            if (pos == r) {
                std::vector<std::pair<int, int>> free_slots;
                for (int i = 0; i < r; ++i)
                    for (int j = pivots[static_cast<size_t>(i)] + 1; j < s; ++j) {
                        bool isp = false;
                        for (int l = 0; l < r; ++l)
                            if (pivots[static_cast<size_t>(l)] == j) isp = true;
                        if (!isp) free_slots.emplace_back(i, j);
                    }
                std::vector<long> vals(free_slots.size(), 0);
                while (true) {
                    std::vector<std::vector<long>> sub;
                    for (int i = 0; i < r; ++i) {
                        std::vector<long> coeff(static_cast<size_t>(s), 0);
                        coeff[static_cast<size_t>(pivots[static_cast<size_t>(i)])] = 1;
                        for (size_t f = 0; f < free_slots.size(); ++f)
                            if (free_slots[f].first == i)
                                coeff[static_cast<size_t>(free_slots[f].second)] = vals[f];
                        std::vector<long> v(static_cast<size_t>(n), 0);
                        for (int c = 0; c < s; ++c) {
                            if (!coeff[static_cast<size_t>(c)]) continue;
                            for (int t2 = 0; t2 < n; ++t2)
                                v[static_cast<size_t>(t2)] =
                                    md(v[static_cast<size_t>(t2)] +
                                           coeff[static_cast<size_t>(c)] *
                                               basis[static_cast<size_t>(c)][static_cast<size_t>(t2)],
                                       q);
                        }
                        sub.push_back(std::move(v));
                    }
                    fn(sub, r);
                    size_t f = 0;
                    for (; f < vals.size(); ++f) {
                        if (++vals[f] < q) break;
                        vals[f] = 0;
                    }
                    if (vals.empty() || f == vals.size()) break;
                }
                return;
            }
            for (int c = start; c < s; ++c) {
                pivots[static_cast<size_t>(pos)] = c;
                choose(pos + 1, c + 1);
            }
        };
        choose(0, 0);
    }
}

}  // namespace

bool unimodular_at(const HalfIntSym& S, long q) {
    return arith::ord(S.det_two_t(), q).value() == 0;
}

Int fq_gram_count(const HalfIntSym& S, const HalfIntSym& T, long q) {
    if (q == 2) return gram_count_two(S, two_targets(T));
    return gram_count_odd(S, symmetric_targets_mod_q(T, q), T.degree(), q);
}

Int fq_gram_count_primitive(const HalfIntSym& S, const HalfIntSym& T, long q) {
    int n = T.degree();
    auto rad = radical_mod_q(T, q);
    Int total(0);
    for_each_subspace(rad, q, n, [&](const std::vector<std::vector<long>>& w_basis, int r) {
        if (r == 0) {
            total += fq_gram_count(S, T, q);
            return;
        }
        // RREF of the subspace basis to locate pivot coordinates; the
        // complement coordinates index the quotient form (X W = 0 pins the
        // pivot columns of X in terms of the rest)
        std::vector<std::vector<long>> wb = w_basis;
        std::vector<int> pivots;
        int rr = 0;
        for (int c = 0; c < n && rr < r; ++c) {
            int piv = -1;
            for (int i = rr; i < r; ++i)
                if (wb[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(wb[static_cast<size_t>(rr)], wb[static_cast<size_t>(piv)]);
            long inv = inv_mod(wb[static_cast<size_t>(rr)][static_cast<size_t>(c)], q);
            for (int j = 0; j < n; ++j)
                wb[static_cast<size_t>(rr)][static_cast<size_t>(j)] =
                    md(wb[static_cast<size_t>(rr)][static_cast<size_t>(j)] * inv, q);
            for (int i = 0; i < r; ++i) {
                if (i == rr) continue;
                long f = wb[static_cast<size_t>(i)][static_cast<size_t>(c)];
                if (f == 0) continue;
                for (int j = 0; j < n; ++j)
                    wb[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        md(wb[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                               f * wb[static_cast<size_t>(rr)][static_cast<size_t>(j)],
                           q);
            }
            pivots.push_back(c);
            ++rr;
        }
        std::vector<bool> isp(static_cast<size_t>(n), false);
        for (int c : pivots) isp[static_cast<size_t>(c)] = true;
        std::vector<int> comp;
        for (int c = 0; c < n; ++c)
            if (!isp[static_cast<size_t>(c)]) comp.push_back(c);
        HalfIntSym Tq = T.principal_submatrix(comp);
        Int z = fq_gram_count(S, Tq, q);
        Int coeff = arith::int_pow(Int(q), static_cast<unsigned long>(r * (r - 1) / 2));
        if (r % 2)
            total -= coeff * z;
        else
            total += coeff * z;
    });
    return total;
}

}  // namespace eistheta::local_forms
