#include "eistheta/digit_count.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace eistheta::local_forms {

namespace {

using std::vector;
using ll = long long;

ll md(ll a, ll q) {
    ll r = a % q;
    return r < 0 ? r + q : r;
}

ll inv_mod_ll(ll a, ll q) {
    ll t = 0, nt = 1, r = q, nr = md(a, q);
    while (nr != 0) {
        ll quo = r / nr;
        t -= quo * nt;
        std::swap(t, nt);
        r -= quo * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::logic_error("inv_mod_ll: not invertible");
    return md(t, q);
}

struct Problem {
    int m, n, N, mn;
    long q;
    long e;
    ll qe;                      // q^e
    vector<ll> qpow;            // q^0..q^e
    vector<ll> G;               // 2S, m x m
    vector<ll> U;               // 2T, n x n
    bool primitive_only;
    CountOptions opts;
    std::atomic<long long> nodes{0};

    ll g(int i, int j) const { return G[static_cast<size_t>(i) * m + j]; }
    ll u(int i, int j) const { return U[static_cast<size_t>(i) * n + j]; }
};

// constraint index: pairs (i<=j) in row-major order
int pair_index(int i, int j, int n) {
    // i <= j; constraints ordered (0,0),(0,1)..(0,n-1),(1,1),..
    return i * n - i * (i - 1) / 2 + (j - i);
}

// constraint values C_k(X) over Z for the lifted X (columns x_j in [0, q^c))
void constraint_values(const Problem& P, const vector<ll>& X, vector<ll>& out) {
    // X column-major: X[j*m + r]
    out.assign(static_cast<size_t>(P.N), 0);
    for (int i = 0; i < P.n; ++i)
        for (int j = i; j < P.n; ++j) {
            ll acc = 0;
            for (int r = 0; r < P.m; ++r) {
                ll gr = 0;
                for (int s2 = 0; s2 < P.m; ++s2)
                    gr += P.g(r, s2) * X[static_cast<size_t>(j) * P.m + s2];
                acc += X[static_cast<size_t>(i) * P.m + r] * gr;
            }
            ll c = acc - P.u(i, j);
            if (i == j) c /= 2;  // (x'Gx - U_jj)/2, always integral
            out[static_cast<size_t>(pair_index(i, j, P.n))] = c;
        }
}

// gradient rows of the constraints at X, reduced mod q: row k over the mn
// coordinates (column-major slots)
void jacobian_mod_q(const Problem& P, const vector<ll>& X, vector<ll>& J) {
    J.assign(static_cast<size_t>(P.N) * P.mn, 0);
    // w_j = G x_j mod q
    vector<ll> w(static_cast<size_t>(P.n) * P.m);
    for (int j = 0; j < P.n; ++j)
        for (int r = 0; r < P.m; ++r) {
            ll acc = 0;
            for (int s2 = 0; s2 < P.m; ++s2)
                acc += P.g(r, s2) * X[static_cast<size_t>(j) * P.m + s2];
            w[static_cast<size_t>(j) * P.m + r] = md(acc, P.q);
        }
    for (int i = 0; i < P.n; ++i)
        for (int j = i; j < P.n; ++j) {
            int k = pair_index(i, j, P.n);
            if (i == j) {
                for (int r = 0; r < P.m; ++r)
                    J[static_cast<size_t>(k) * P.mn + j * P.m + r] = w[static_cast<size_t>(j) * P.m + r];
            } else {
                for (int r = 0; r < P.m; ++r) {
                    J[static_cast<size_t>(k) * P.mn + i * P.m + r] = w[static_cast<size_t>(j) * P.m + r];
                    J[static_cast<size_t>(k) * P.mn + j * P.m + r] = w[static_cast<size_t>(i) * P.m + r];
                }
            }
        }
}

// integer jacobian rows (no reduction), for the linear endgame
void jacobian_int(const Problem& P, const vector<ll>& X, vector<ll>& J) {
    J.assign(static_cast<size_t>(P.N) * P.mn, 0);
    vector<ll> w(static_cast<size_t>(P.n) * P.m);
    for (int j = 0; j < P.n; ++j)
        for (int r = 0; r < P.m; ++r) {
            ll acc = 0;
            for (int s2 = 0; s2 < P.m; ++s2)
                acc += P.g(r, s2) * X[static_cast<size_t>(j) * P.m + s2];
            w[static_cast<size_t>(j) * P.m + r] = acc;
        }
    for (int i = 0; i < P.n; ++i)
        for (int j = i; j < P.n; ++j) {
            int k = pair_index(i, j, P.n);
            if (i == j) {
                for (int r = 0; r < P.m; ++r)
                    J[static_cast<size_t>(k) * P.mn + j * P.m + r] = w[static_cast<size_t>(j) * P.m + r];
            } else {
                for (int r = 0; r < P.m; ++r) {
                    J[static_cast<size_t>(k) * P.mn + i * P.m + r] += w[static_cast<size_t>(j) * P.m + r];
                    J[static_cast<size_t>(k) * P.mn + j * P.m + r] += w[static_cast<size_t>(i) * P.m + r];
                }
            }
        }
}

int rank_mod_q(vector<ll> a, int rows, int cols, long q) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (md(a[static_cast<size_t>(i) * cols + c], q) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(a[static_cast<size_t>(r) * cols + j], a[static_cast<size_t>(piv) * cols + j]);
        ll inv = inv_mod_ll(a[static_cast<size_t>(r) * cols + c], q);
        for (int j = 0; j < cols; ++j)
            a[static_cast<size_t>(r) * cols + j] = md(a[static_cast<size_t>(r) * cols + j] * inv, q);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            ll f = md(a[static_cast<size_t>(i) * cols + c], q);
            if (!f) continue;
            for (int j = 0; j < cols; ++j)
                a[static_cast<size_t>(i) * cols + j] =
                    md(a[static_cast<size_t>(i) * cols + j] - f * a[static_cast<size_t>(r) * cols + j], q);
        }
        ++r;
    }
    return r;
}

// Exact count of solutions y in (Z/q^E)^cols of M y = r (mod q^E) via the
// Smith normal form of M over Z/q^E.  Returns the count (0 if inconsistent).
Int linear_solution_count(vector<ll> M, vector<ll> rhs, int rows, int cols, long q, long E,
                          const vector<ll>& qpow) {
    if (E == 0) return Int(1);
    ll qE = qpow[static_cast<size_t>(E)];
    for (auto& x : M) x = md(x, qE);
    for (auto& x : rhs) x = md(x, qE);
    auto valq = [&](ll x) {
        if (x == 0) return E;
        long v = 0;
        while (x % q == 0) { x /= q; ++v; }
        return v < E ? v : E;
    };
    int top = 0;
    vector<long> sigmas;
    int eff_rows = rows, eff_cols = cols;
    // row/col elimination with minimal-valuation pivoting
    vector<int> rperm(static_cast<size_t>(rows)), cperm(static_cast<size_t>(cols));
    for (int i = 0; i < rows; ++i) rperm[static_cast<size_t>(i)] = i;
    for (int j = 0; j < cols; ++j) cperm[static_cast<size_t>(j)] = j;
    auto at = [&](int i, int j) -> ll& { return M[static_cast<size_t>(i) * cols + j]; };
    while (top < eff_rows && top < eff_cols) {
        long best = E;
        int bi = -1, bj = -1;
        for (int i = top; i < eff_rows; ++i)
            for (int j = top; j < eff_cols; ++j) {
                long v = valq(at(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;  // all remaining entries are 0 mod q^E
        // swap into position
        for (int j = 0; j < cols; ++j) std::swap(at(top, j), at(bi, j));
        std::swap(rhs[static_cast<size_t>(top)], rhs[static_cast<size_t>(bi)]);
        for (int i = 0; i < rows; ++i)
            std::swap(M[static_cast<size_t>(i) * cols + top], M[static_cast<size_t>(i) * cols + bj]);
        long sv = best;
        sigmas.push_back(sv);
        ll piv = at(top, top);
        ll unit = piv / qpow[static_cast<size_t>(sv)];
        ll unit_inv = inv_mod_ll(unit, qE);
        // clear column below/above (row ops, touching rhs)
        for (int i = 0; i < eff_rows; ++i) {
            if (i == top) continue;
            ll b = at(i, top);
            if (b == 0) continue;
            ll mu = md((b / qpow[static_cast<size_t>(sv)]) * unit_inv, qE);
            for (int j = top; j < eff_cols; ++j) at(i, j) = md(at(i, j) - mu * at(top, j), qE);
            rhs[static_cast<size_t>(i)] = md(rhs[static_cast<size_t>(i)] - mu * rhs[static_cast<size_t>(top)], qE);
        }
        // clear row to the right (column ops, no rhs effect)
        for (int j = top + 1; j < eff_cols; ++j) {
            ll b = at(top, j);
            if (b == 0) continue;
            ll mu = md((b / qpow[static_cast<size_t>(sv)]) * unit_inv, qE);
            for (int i = top; i < eff_rows; ++i)
                M[static_cast<size_t>(i) * cols + j] = md(M[static_cast<size_t>(i) * cols + j] - mu * M[static_cast<size_t>(i) * cols + top], qE);
        }
        ++top;
    }
    // diagonal rows: q^{sigma} y = rhs mod q^E needs q^{sigma} | rhs
    Int count(1);
    for (int k = 0; k < top; ++k) {
        ll r = rhs[static_cast<size_t>(k)];
        if (md(r, qpow[static_cast<size_t>(sigmas[static_cast<size_t>(k)])]) != 0) return Int(0);
        count *= Int(static_cast<long>(qpow[static_cast<size_t>(sigmas[static_cast<size_t>(k)])]));
    }
    // zero rows: rhs must vanish mod q^E
    for (int k = top; k < rows; ++k)
        if (rhs[static_cast<size_t>(k)] != 0) return Int(0);
    // free coordinates
    Int qE_int = arith::int_pow(Int(q), static_cast<unsigned long>(E));
    Int freep = arith::int_pow(qE_int, static_cast<unsigned long>(cols - top));
    return count * freep;
}

struct FqSystem {
    // solutions of (J mod q) y = rhs over F_q: particular + kernel basis
    bool consistent = false;
    vector<ll> particular;         // size cols
    vector<vector<ll>> kernel;     // basis vectors
};

FqSystem solve_mod_q(vector<ll> a, vector<ll> rhs, int rows, int cols, long q) {
    FqSystem sys;
    vector<int> pivot_of_col(static_cast<size_t>(cols), -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (md(a[static_cast<size_t>(i) * cols + c], q) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(a[static_cast<size_t>(r) * cols + j], a[static_cast<size_t>(piv) * cols + j]);
        std::swap(rhs[static_cast<size_t>(r)], rhs[static_cast<size_t>(piv)]);
        ll inv = inv_mod_ll(a[static_cast<size_t>(r) * cols + c], q);
        for (int j = 0; j < cols; ++j)
            a[static_cast<size_t>(r) * cols + j] = md(a[static_cast<size_t>(r) * cols + j] * inv, q);
        rhs[static_cast<size_t>(r)] = md(rhs[static_cast<size_t>(r)] * inv, q);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            ll f = md(a[static_cast<size_t>(i) * cols + c], q);
            if (!f) continue;
            for (int j = 0; j < cols; ++j)
                a[static_cast<size_t>(i) * cols + j] =
                    md(a[static_cast<size_t>(i) * cols + j] - f * a[static_cast<size_t>(r) * cols + j], q);
            rhs[static_cast<size_t>(i)] = md(rhs[static_cast<size_t>(i)] - f * rhs[static_cast<size_t>(r)], q);
        }
        pivot_of_col[static_cast<size_t>(c)] = r;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (md(rhs[static_cast<size_t>(i)], q) != 0) return sys;  // inconsistent
    sys.consistent = true;
    sys.particular.assign(static_cast<size_t>(cols), 0);
    for (int c = 0; c < cols; ++c)
        if (pivot_of_col[static_cast<size_t>(c)] >= 0)
            sys.particular[static_cast<size_t>(c)] = md(rhs[static_cast<size_t>(pivot_of_col[static_cast<size_t>(c)])], q);
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[static_cast<size_t>(c)] >= 0) continue;
        vector<ll> v(static_cast<size_t>(cols), 0);
        v[static_cast<size_t>(c)] = 1;
        for (int c2 = 0; c2 < cols; ++c2) {
            int pr = pivot_of_col[static_cast<size_t>(c2)];
            if (pr >= 0) v[static_cast<size_t>(c2)] = md(-a[static_cast<size_t>(pr) * cols + c], q);
        }
        sys.kernel.push_back(std::move(v));
    }
    return sys;
}

int rank_of_columns_mod_q(const Problem& P, const vector<ll>& X) {
    vector<ll> a(static_cast<size_t>(P.n) * P.m);
    for (int j = 0; j < P.n; ++j)
        for (int r = 0; r < P.m; ++r) a[static_cast<size_t>(j) * P.m + r] = X[static_cast<size_t>(j) * P.m + r];
    return rank_mod_q(std::move(a), P.n, P.m, P.q);
}

Int subtree_count(Problem& P, vector<ll>& X, long c);

// children at level c: X' = X + q^c (particular + kernel combos)
Int explore_children(Problem& P, vector<ll>& X, long c) {
    vector<ll> C;
    constraint_values(P, X, C);
    vector<ll> J;
    jacobian_mod_q(P, X, J);
    vector<ll> rhs(static_cast<size_t>(P.N));
    for (int k = 0; k < P.N; ++k) {
        ll v = C[static_cast<size_t>(k)] / P.qpow[static_cast<size_t>(c)];
        rhs[static_cast<size_t>(k)] = md(-v, P.q);
    }
    FqSystem sys = solve_mod_q(J, rhs, P.N, P.mn, P.q);
    if (!sys.consistent) return Int(0);
    size_t kdim = sys.kernel.size();
    vector<ll> combo(kdim, 0);
    Int total(0);
    vector<ll> Xc(X.size());
    while (true) {
        for (int t = 0; t < P.mn; ++t) {
            ll y = sys.particular[static_cast<size_t>(t)];
            for (size_t k = 0; k < kdim; ++k)
                if (combo[k]) y += combo[k] * sys.kernel[k][static_cast<size_t>(t)];
            y = md(y, P.q);
            Xc[static_cast<size_t>(t)] = X[static_cast<size_t>(t)] + P.qpow[static_cast<size_t>(c)] * y;
        }
        total += subtree_count(P, Xc, c + 1);
        size_t f = 0;
        for (; f < kdim; ++f) {
            if (++combo[f] < P.q) break;
            combo[f] = 0;
        }
        if (kdim == 0 || f == kdim) break;
    }
    return total;
}

Int subtree_count(Problem& P, vector<ll>& X, long c) {
    if (P.nodes.fetch_add(1) >= P.opts.node_budget)
        throw BudgetError("count_solutions: node budget exceeded at q=" + std::to_string(P.q) +
                          " e=" + std::to_string(P.e) + " level=" + std::to_string(c) +
                          " nodes=" + std::to_string(P.nodes.load()));
    if (c >= P.e) return Int(1);
    // rank collapse: full-rank Jacobian mod q gives uniform lifts forever
    // (skipped once the linear endgame below applies, which subsumes it)
    if (P.opts.rank_collapse && !(P.opts.linear_collapse && 2 * c >= P.e)) {
        vector<ll> J;
        jacobian_mod_q(P, X, J);
        if (rank_mod_q(J, P.N, P.mn, P.q) == P.N) {
            unsigned long exp = static_cast<unsigned long>((P.e - c) * (P.mn - P.N));
            return arith::int_pow(Int(P.q), exp);
        }
    }
    // linearization: for 2c >= e the quadratic increment vanishes mod q^e
    if (P.opts.linear_collapse && 2 * c >= P.e) {
        vector<ll> C;
        constraint_values(P, X, C);
        vector<ll> J;
        jacobian_int(P, X, J);
        long E = P.e - c;
        vector<ll> rhs(static_cast<size_t>(P.N));
        for (int k = 0; k < P.N; ++k)
            rhs[static_cast<size_t>(k)] = md(-(C[static_cast<size_t>(k)] / P.qpow[static_cast<size_t>(c)]),
                                             P.qpow[static_cast<size_t>(E)]);
        for (auto& x : J) x = md(x, P.qpow[static_cast<size_t>(E)]);
        return linear_solution_count(std::move(J), std::move(rhs), P.N, P.mn, P.q, E, P.qpow);
    }
    return explore_children(P, X, c);
}

// enumerate level-1 classes column by column, collecting complete mod-q
// solutions
void level1_enumerate(Problem& P, std::vector<vector<ll>>& out) {
    vector<ll> X(static_cast<size_t>(P.mn), 0);
    std::function<void(int)> rec = [&](int col) {
        if (col == P.n) {
            out.push_back(X);
            return;
        }
        vector<ll> x(static_cast<size_t>(P.m), 0);
        while (true) {
            // check constraints (i, col) for i <= col mod q
            for (int r = 0; r < P.m; ++r) X[static_cast<size_t>(col) * P.m + r] = x[static_cast<size_t>(r)];
            bool ok = true;
            for (int i = 0; i <= col && ok; ++i) {
                ll acc = 0;
                for (int r = 0; r < P.m; ++r) {
                    ll gr = 0;
                    for (int s2 = 0; s2 < P.m; ++s2)
                        gr += P.g(r, s2) * X[static_cast<size_t>(col) * P.m + s2];
                    acc += X[static_cast<size_t>(i) * P.m + r] * gr;
                }
                ll c = acc - P.u(i, col);
                if (i == col) c /= 2;
                if (md(c, P.q) != 0) ok = false;
            }
            if (ok) rec(col + 1);
            size_t f = 0;
            for (; f < x.size(); ++f) {
                if (++x[f] < P.q) break;
                x[f] = 0;
            }
            if (f == x.size()) break;
        }
        for (int r = 0; r < P.m; ++r) X[static_cast<size_t>(col) * P.m + r] = 0;
    };
    rec(0);
}

}  // namespace

Int count_solutions(const HalfIntSym& S, const HalfIntSym& T, long q, long e,
                    bool primitive_only, const CountOptions& opts) {
    if (e < 1) throw std::domain_error("count_solutions: e must be >= 1");
    Problem P;
    P.m = S.degree();
    P.n = T.degree();
    if (P.m < P.n) throw std::domain_error("count_solutions: need m >= n");
    P.N = P.n * (P.n + 1) / 2;
    P.mn = P.m * P.n;
    P.q = q;
    P.e = e;
    P.primitive_only = primitive_only;
    P.opts = opts;
    P.qpow.resize(static_cast<size_t>(e) + 1);
    P.qpow[0] = 1;
    for (long i = 1; i <= e; ++i) {
        P.qpow[static_cast<size_t>(i)] = P.qpow[static_cast<size_t>(i - 1)] * q;
        if (P.qpow[static_cast<size_t>(i)] > (1LL << 21))
            throw BudgetError("count_solutions: q^e too large for the lifting engine (q=" +
                              std::to_string(q) + ", e=" + std::to_string(e) + ")");
    }
    P.qe = P.qpow[static_cast<size_t>(e)];
    P.G.resize(static_cast<size_t>(P.m) * P.m);
    for (int i = 0; i < P.m; ++i)
        for (int j = 0; j < P.m; ++j) P.G[static_cast<size_t>(i) * P.m + j] = S.two_t(i, j).get_si();
    P.U.resize(static_cast<size_t>(P.n) * P.n);
    for (int i = 0; i < P.n; ++i)
        for (int j = 0; j < P.n; ++j) P.U[static_cast<size_t>(i) * P.n + j] = T.two_t(i, j).get_si();

    std::vector<vector<ll>> classes;
    level1_enumerate(P, classes);

    if (primitive_only) {
        std::vector<vector<ll>> prim;
        for (auto& X : classes)
            if (rank_of_columns_mod_q(P, X) == P.n) prim.push_back(X);
        classes = std::move(prim);
    }

    int threads = opts.threads > 1 ? opts.threads : 1;
    if (threads == 1 || classes.size() < 2) {
        Int total(0);
        for (auto& X : classes) {
            vector<ll> Xm = X;
            total += subtree_count(P, Xm, 1);
        }
        return total;
    }
    // deterministic parallel reduction over level-1 classes
    std::vector<Int> partial(static_cast<size_t>(threads), Int(0));
    std::vector<std::exception_ptr> errs(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                Int acc(0);
                for (size_t i = static_cast<size_t>(t); i < classes.size(); i += static_cast<size_t>(threads)) {
                    vector<ll> Xm = classes[i];
                    acc += subtree_count(P, Xm, 1);
                }
                partial[static_cast<size_t>(t)] = acc;
            } catch (...) {
                errs[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e2 : errs)
        if (e2) std::rethrow_exception(e2);
    Int total(0);
    for (auto& p2 : partial) total += p2;
    return total;
}

}  // namespace eistheta::local_forms
