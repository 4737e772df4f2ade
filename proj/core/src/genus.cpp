#include "eistheta/genus.hpp"

#include "eistheta/density.hpp"
#include "eistheta/hilbert.hpp"
#include "eistheta/invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace eistheta::global_forms {

using local_forms::alpha_p_closed;
using local_forms::alpha_via_beta;
using local_forms::local_invariants;

std::vector<GenusRep> p11_representatives() {
    auto s1 = HalfIntSym::from_two_t(
        4, {Int(2), Int(0), Int(1), Int(0), Int(0), Int(2), Int(0), Int(1), Int(1), Int(0), Int(6),
            Int(0), Int(0), Int(1), Int(0), Int(6)});
    auto s2 = HalfIntSym::from_two_t(
        4, {Int(2), Int(1), Int(1), Int(1), Int(1), Int(2), Int(0), Int(1), Int(1), Int(0), Int(8),
            Int(4), Int(1), Int(1), Int(4), Int(8)});
    auto s3 = HalfIntSym::from_two_t(
        4, {Int(4), Int(2), Int(1), Int(1), Int(2), Int(4), Int(0), Int(1), Int(1), Int(0), Int(4),
            Int(2), Int(1), Int(1), Int(2), Int(4)});
    return {GenusRep{s1, Int(32)}, GenusRep{s2, Int(72)}, GenusRep{s3, Int(24)}};
}

GenusRep make_rep(const HalfIntSym& gram) { return GenusRep{gram, aut_count(gram)}; }

Rat mass(const std::vector<GenusRep>& reps) {
    if (reps.empty()) throw std::domain_error("mass: no representatives");
    Rat m(0);
    for (const auto& r : reps) m += Rat(1) / Rat(r.aut);
    return m;
}

Rat genus_theta_coeff(const std::vector<GenusRep>& reps, const HalfIntSym& T, int threads) {
    if (reps.empty()) throw std::domain_error("genus_theta_coeff: no representatives");
    Rat num(0);
    for (const auto& r : reps) num += Rat(rep_count(r.gram, T, threads)) / Rat(r.aut);
    return num / mass(reps);
}

long level(const HalfIntSym& S) {
    int n = S.degree();
    Int det = S.det_two_t();
    if (det == 0) throw std::domain_error("level: degenerate S");
    // adjugate of 2S: (2S)^{-1} = adj / det
    std::vector<Rat> inv(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Int> minor;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.push_back(S.two_t(r, c));
                }
            }
            Int cof = int_det(minor, n - 1);
            if ((i + j) % 2) cof = -cof;
            Rat entry(cof, det);
            entry.canonicalize();
            inv[static_cast<size_t>(i) * n + j] = entry;
        }
    Int N(1);
    for (const auto& x : inv) N = lcm(N, Int(x.get_den()));
    // even diagonal: N * inv_jj must be even
    bool again = true;
    while (again) {
        again = false;
        for (int j = 0; j < n; ++j) {
            Rat v = Rat(N) * inv[static_cast<size_t>(j) * n + j];
            if (v.get_den() != 1 || v.get_num() % 2 != 0) {
                N *= 2;
                again = true;
                break;
            }
        }
    }
    return N.get_si();
}

bool verify_genus_membership(const HalfIntSym& S, long p) {
    if (S.degree() != 4) return false;
    if (!S.is_positive_definite()) return false;
    if (S.det_t() != Rat(Int(p) * Int(p), 16)) return false;
    if (level(S) != p) return false;
    // h_q = -1 exactly at q in {2, p}; square unit codeterminant everywhere
    std::set<long> qs{2, p, 3, 5};
    Int d2 = S.det_two_t();
    for (long q = 2; q * q <= d2.get_si() || q <= p; ++q)
        if (arith::is_prime(q) && arith::ord(d2, q).value() > 0) qs.insert(q);
    for (long q : qs) {
        int h = local_invariants(S, q).hasse;
        bool expect_minus = (q == 2 || q == p);
        if (h != (expect_minus ? -1 : 1)) return false;
        Rat unit = Rat(d2) / Rat(Int(p) * Int(p));
        if (arith::chi_q(unit, q) != 1) return false;
    }
    return true;
}

HalfIntSym construct_sp(long p, long search_bound) {
    // exhaustive over 2S with |entries| <= search_bound, smallest trace
    // first, lexicographic within a trace class
    std::vector<std::vector<long>> diags;
    std::function<void(std::vector<long>&)> gend = [&](std::vector<long>& d) {
        if (static_cast<int>(d.size()) == 4) {
            diags.push_back(d);
            return;
        }
        for (long v = 2; v <= search_bound; v += 2) {
            d.push_back(v);
            gend(d);
            d.pop_back();
        }
    };
    std::vector<long> tmp;
    gend(tmp);
    std::stable_sort(diags.begin(), diags.end(), [](const auto& a, const auto& b) {
        long ta = a[0] + a[1] + a[2] + a[3], tb = b[0] + b[1] + b[2] + b[3];
        if (ta != tb) return ta < tb;
        return a < b;
    });
    Int target = Int(p) * Int(p);
    // off-diagonal entries in lexicographic order: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    const std::vector<std::pair<int, int>> pos{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& d : diags) {
        // Hadamard: det(2S) <= product of the diagonal
        if (Int(d[0]) * d[1] * d[2] * d[3] < target) continue;
        std::vector<long> off(6, 0);
        auto build = [&]() {
            std::vector<Int> e(16);
            for (int i = 0; i < 4; ++i) e[static_cast<size_t>(i) * 4 + i] = d[static_cast<size_t>(i)];
            for (size_t k = 0; k < pos.size(); ++k) {
                auto [i, j] = pos[k];
                e[static_cast<size_t>(i) * 4 + j] = off[k];
                e[static_cast<size_t>(j) * 4 + i] = off[k];
            }
            return HalfIntSym::from_two_t(4, std::move(e));
        };
        auto det_at = [&](long v23) {
            off[5] = v23;
            return build().det_two_t();
        };
        std::function<bool(size_t)> rec = [&](size_t pi) -> bool {
            if (pi == 5) {
                // the determinant is quadratic in the last entry: solve it
                Int c0 = det_at(0), c1 = det_at(1), cm1 = det_at(-1);
                Int A2 = c1 + cm1 - 2 * c0;  // 2A
                Int B2 = c1 - cm1;           // 2B
                // det(v) = (A2/2) v^2 + (B2/2) v + c0 = target, i.e.
                // A2 v^2 + B2 v + 2(c0 - target) = 0
                std::vector<long> roots;
                if (A2 == 0) {
                    if (B2 != 0 && (2 * (target - c0)) % B2 == 0)
                        roots.push_back(Int((2 * (target - c0)) / B2).get_si());
                } else {
                    Int disc = B2 * B2 - 8 * A2 * (c0 - target);
                    if (disc >= 0) {
                        Int s;
                        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
                        if (s * s == disc) {
                            Int nums[2] = {Int(-B2 + s), Int(-B2 - s)};
                            for (const Int& num : nums) {
                                if (num % (2 * A2) == 0) {
                                    Int v = num / (2 * A2);
                                    roots.push_back(v.get_si());
                                }
                            }
                        }
                    }
                }
                std::sort(roots.begin(), roots.end());
                for (long v : roots) {
                    if (v < -search_bound || v > search_bound) continue;
                    off[5] = v;
                    HalfIntSym S = build();
                    if (S.det_two_t() != target) continue;
                    if (!S.is_positive_definite()) continue;
                    if (verify_genus_membership(S, p)) return true;
                }
                off[5] = 0;
                return false;
            }
            auto [pi_i, pi_j] = pos[pi];
            for (long v = -search_bound; v <= search_bound; ++v) {
                // pairwise positivity: v^2 < d_i d_j
                if (v * v >= d[static_cast<size_t>(pi_i)] * d[static_cast<size_t>(pi_j)]) continue;
                off[pi] = v;
                if (pi == 3) {
                    std::vector<Int> m3{Int(d[0]), Int(off[0]), Int(off[1]), Int(off[0]), Int(d[1]),
                                        Int(off[3]), Int(off[1]), Int(off[3]), Int(d[2])};
                    if (int_det(m3, 3) <= 0) continue;
                }
                if (pi == 4) {
                    std::vector<Int> m3{Int(d[0]), Int(off[0]), Int(off[2]), Int(off[0]), Int(d[1]),
                                        Int(off[4]), Int(off[2]), Int(off[4]), Int(d[3])};
                    if (int_det(m3, 3) <= 0) continue;
                }
                if (rec(pi + 1)) return true;
            }
            off[pi] = 0;
            return false;
        };
        if (rec(0)) {
            return build();
        }
    }
    throw std::runtime_error("construct_sp: no matrix found within the search bound; increase it");
}

namespace {

// exact value c * pi^{pi_half/2} * sqrt(surd); comparisons demand that all
// transcendental parts cancel
struct SymVal {
    Rat c{1};
    long pi_half = 0;  // exponent of sqrt(pi)
    Rat surd{1};

    void mul_rat(const Rat& r) { c *= r; }
    void mul_pi_half(long k) { pi_half += k; }
    void mul_sqrt(const Rat& r) {
        // sqrt(surd) * sqrt(r) = sqrt(surd * r)
        surd *= r;
        reduce();
    }
    void reduce() {
        // pull perfect-square parts of surd into c
        if (surd == 1) return;
        Int num = surd.get_num(), den = surd.get_den();
        Int sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        if (sn * sn == num && sd * sd == den) {
            Rat root(sn, sd);
            root.canonicalize();
            c *= root;
            surd = 1;
        }
    }
    Rat to_rat() const {
        if (pi_half != 0) throw std::logic_error("siegel_weighted_average: pi power did not cancel");
        if (surd != 1) throw std::logic_error("siegel_weighted_average: irrational surd survived");
        return c;
    }
};

// Gamma(k/2) = rat * (sqrt pi)^{0 or 1}
void gamma_half(long k, Rat* rat, int* sqrt_pi) {
    if (k <= 0) throw std::domain_error("gamma_half: nonpositive argument");
    if (k % 2 == 0) {
        Rat f(1);
        for (long i = 2; i < k / 2 + 1; ++i) f *= (i - 1);
        *rat = f;
        *sqrt_pi = 0;
        return;
    }
    // Gamma(1/2) = sqrt(pi); Gamma(k/2) = (k/2 - 1) Gamma(k/2 - 1)
    Rat f(1);
    for (long i = k; i > 1; i -= 2) {
        if (i == 1) break;
        f *= Rat(i - 2, 2);
    }
    *rat = f;
    *sqrt_pi = 1;
}

}  // namespace

Rat siegel_weighted_average(const HalfIntSym& S, const HalfIntSym& T,
                            const std::vector<GenusRep>& reps) {
    int m = S.degree(), n = T.degree();
    if (m != 4 || (n != 3 && n != 4))
        throw std::domain_error("siegel_weighted_average: supported for quaternary S and n in {3,4}");
    if (!T.is_positive_definite())
        throw std::domain_error("siegel_weighted_average: T must be positive definite");
    // identify the odd prime p with S in genus(S^(p))
    long p = level(S);
    if (!verify_genus_membership(S, p))
        throw std::domain_error("siegel_weighted_average: S is not in a genus(S^(p))");

    // route (i): representative-weighted average
    Rat avg = genus_theta_coeff(reps, T);

    // route (ii): product formula with symbolic pi bookkeeping
    SymVal v;
    v.mul_rat(arith::rat_pow(2, n));
    bool half = (m == n + 1) || (m == n && n > 1);
    if (half) v.mul_rat(Rat(1, 2));
    v.mul_pi_half(n * (2 * m - n + 1) / 2);  // pi^{n(2m-n+1)/4} as sqrt(pi)^{...}
    for (int i = 1; i <= n - 1; ++i) {
        Rat g;
        int sq;
        gamma_half(m - i, &g, &sq);
        v.mul_rat(Rat(1) / g);
        v.mul_pi_half(-sq);
    }
    // (det 2S)^{-n/2}, (det 2T)^{(m-n-1)/2}
    Rat d2s(S.det_two_t()), d2t(T.det_two_t());
    if (n % 2 == 0) {
        for (int i = 0; i < n / 2; ++i) v.mul_rat(Rat(1) / d2s);
    } else {
        for (int i = 0; i < (n - 1) / 2; ++i) v.mul_rat(Rat(1) / d2s);
        v.mul_sqrt(Rat(1) / d2s);
    }
    int dt_exp = m - n - 1;
    if (dt_exp % 2 == 0) {
        for (int i = 0; i < dt_exp / 2; ++i) v.mul_rat(d2t);
    } else {
        int whole = (dt_exp - (dt_exp % 2 != 0 ? 1 : 0)) / 2;
        for (int i = 0; i < whole; ++i) v.mul_rat(d2t);
        if (dt_exp > 0)
            v.mul_sqrt(d2t);
        else
            v.mul_sqrt(Rat(1) / d2t);
    }
    // local densities: explicit at bad primes, zeta-regularized elsewhere;
    // alpha_q(S,T) = alpha_q(H_2,T) for q != p and alpha_p(U0 perp pU0, T)
    // at p (GL(Z_q)-invariance in the S slot)
    std::set<long> bad{2, p};
    Int d2t_int = T.det_two_t();
    for (long q = 2; q <= d2t_int; ++q) {
        if (!arith::is_prime(q)) continue;
        if (arith::ord(d2t_int, q).value() > 0) bad.insert(q);
        if (q > 300) break;
    }
    for (long q : bad) {
        Rat aq = (q == p) ? alpha_p_closed(T, p) : alpha_via_beta(hyperbolic(2), T, q);
        if (aq == 0) {
            // product formula value is 0; the comparison still runs
            if (avg != 0)
                throw std::logic_error("siegel_weighted_average: routes disagree (zero vs nonzero)");
            return Rat(0);
        }
        v.mul_rat(aq);
    }
    // remaining good primes: alpha_q = (1-q^-2)^2 for n=3; for n=4 the same
    // after the xi-factor, which is +1 at every good prime iff det(2T) is a
    // square (otherwise the product vanishes)
    if (n == 4) {
        Int s;
        mpz_sqrt(s.get_mpz_t(), d2t_int.get_mpz_t());
        if (s * s != d2t_int) {
            if (avg != 0)
                throw std::logic_error("siegel_weighted_average: routes disagree (zero vs nonzero)");
            return Rat(0);
        }
    }
    // prod_{q not in bad} (1-q^-2)^2 = zeta(2)^{-2} prod_{q in bad} (1-q^-2)^{-2}
    v.mul_rat(Rat(36));
    v.mul_pi_half(-8);
    for (long q : bad) {
        Rat f = Rat(1) - arith::rat_pow(q, -2);
        v.mul_rat(Rat(1) / (f * f));
    }
    Rat product = v.to_rat();
    if (product != avg)
        throw std::logic_error("siegel_weighted_average: representative average and product formula disagree");
    return avg;
}

}  // namespace eistheta::global_forms
