#include "eistheta/invariants.hpp"

#include "eistheta/hilbert.hpp"

#include <stdexcept>

namespace eistheta::local_forms {

using arith::hilbert_symbol;
using arith::Rat;

LocalInvariants local_invariants(const HalfIntSym& T, long place) {
    if (T.det_two_t() == 0) throw std::domain_error("local_invariants: degenerate T");
    std::vector<Rat> b = diagonalize_form(T);
    int n = T.degree();
    int hasse = 1, eps = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int s = hilbert_symbol(b[i], b[j], place);
            hasse *= s;
            if (i != j) eps *= s;
        }
    Rat detT = T.det_t();
    int eta;
    if (n % 2 == 1) {
        int m = (n - 1) / 2;
        int s1 = (m * (m + 1) / 2) % 2 ? hilbert_symbol(Rat(-1), Rat(-1), place) : 1;
        Rat sgn = (m % 2) ? Rat(-1) : Rat(1);
        eta = s1 * hilbert_symbol(sgn, detT, place) * eps;
    } else {
        int m = n / 2;
        int s1 = (m * (m - 1) / 2) % 2 ? hilbert_symbol(Rat(-1), Rat(-1), place) : 1;
        Rat sgn = ((m + 1) % 2) ? Rat(-1) : Rat(1);
        eta = s1 * hilbert_symbol(sgn, detT, place) * eps;
    }
    return LocalInvariants{hasse, eps, eta};
}

int xi_q(const HalfIntSym& T, long q) {
    int n = T.degree();
    if (n % 2 != 0) throw std::domain_error("xi_q: n must be even");
    Rat arg(T.det_two_t());
    if ((n / 2) % 2 == 1) arg = -arg;
    return arith::chi_q(arg, q);
}

}  // namespace eistheta::local_forms
