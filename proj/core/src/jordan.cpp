#include "eistheta/jordan.hpp"

#include <algorithm>
#include <stdexcept>

namespace eistheta::local_forms {

using arith::ord;
using arith::Valuation;

JordanForm jordan_decompose(const HalfIntSym& T, long q) {
    if (q == 2 || !arith::is_prime(q))
        throw std::domain_error("jordan_decompose: q must be an odd prime");
    if (T.det_two_t() == 0) throw std::domain_error("jordan_decompose: degenerate T");

    int n = T.degree();
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v(T.two_t(i, j), 2);
            v.canonicalize();
            a[static_cast<size_t>(i) * n + j] = v;
        }
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };

    JordanForm jf;
    jf.q = q;
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;

    while (!live.empty()) {
        // locate minimal-valuation entry among the live block
        Valuation best = Valuation::infinity();
        int bi = -1, bj = -1;
        for (int i : live)
            for (int j : live) {
                Valuation v = at(i, j) == 0 ? Valuation::infinity() : ord(at(i, j), q);
                if (v < best || (v == best && i == j && bi != bj)) {
                    // prefer a diagonal entry among equal minima
                    if (v < best || (i == j)) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            }
        if (bi < 0) throw std::logic_error("jordan_decompose: vanished block");
        if (bi != bj) {
            // merge column/row bj into bi: new diagonal entry has the
            // minimal valuation (q odd, so the cross term 2a_ij dominates)
            for (int j = 0; j < n; ++j) at(bi, j) += at(bj, j);
            for (int i = 0; i < n; ++i) at(i, bi) += at(i, bj);
        }
        int piv = bi;
        Rat pv = at(piv, piv);
        if (pv == 0) throw std::logic_error("jordan_decompose: zero pivot");
        for (int i : live) {
            if (i == piv) continue;
            Rat f = at(i, piv) / pv;
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) at(i, j) -= f * at(piv, j);
            for (int j = 0; j < n; ++j) at(j, i) -= f * at(j, piv);
        }
        long e = ord(pv, q).value();
        jf.blocks.push_back({e, pv / arith::rat_pow(q, e)});
        live.erase(std::remove(live.begin(), live.end(), piv), live.end());
    }
    std::sort(jf.blocks.begin(), jf.blocks.end(),
              [](const JordanForm::Block& x, const JordanForm::Block& y) {
                  return x.exponent < y.exponent;
              });
    return jf;
}

}  // namespace eistheta::local_forms
