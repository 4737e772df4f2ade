#include "eistheta/siegel_series.hpp"

#include "eistheta/hilbert.hpp"
#include "eistheta/invariants.hpp"

#include <stdexcept>

namespace eistheta::local_forms {

namespace {

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat acc(0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

std::vector<Rat> gamma_poly(const HalfIntSym& T, long q) {
    int n = T.degree();
    std::vector<Rat> g{Rat(1), Rat(-1)};  // 1 - X
    if (n % 2 == 1) {
        for (int i = 1; i <= (n - 1) / 2; ++i) {
            Rat q2i = arith::rat_pow(q, 2 * i);
            g = poly_mul(g, {Rat(1), Rat(0), -q2i});
        }
        return g;
    }
    int xi = xi_q(T, q);
    for (int i = 1; i <= n / 2 - 1; ++i) {
        Rat q2i = arith::rat_pow(q, 2 * i);
        g = poly_mul(g, {Rat(1), Rat(0), -q2i});
    }
    Rat qn2 = arith::rat_pow(q, n / 2);
    if (xi == 0) {
        // ramified: the i = n/2 quadratic factor stays whole
        g = poly_mul(g, {Rat(1), Rat(0), -qn2 * qn2});
    } else {
        // (1 - q^n X^2) / (1 - q^{n/2} xi X) = 1 + q^{n/2} xi X
        g = poly_mul(g, {Rat(1), xi > 0 ? qn2 : -qn2});
    }
    return g;
}

Rat fq_at_special(const HalfIntSym& T, long q) {
    int n = T.degree();
    Rat a = alpha_via_beta(hyperbolic(2), T, q);
    Rat pref = (Rat(1) - arith::rat_pow(q, -2)) * (Rat(1) - arith::rat_pow(q, -2));
    if (n == 3) return a / pref;
    if (n == 4) {
        long D = arith::ord(T.det_two_t(), q).value();
        Rat unit = Rat(T.det_two_t()) / arith::rat_pow(q, D);
        if (D % 2 != 0 || arith::chi_q(unit, q) != 1)
            throw std::domain_error("fq_at_special: n=4 requires det(2T) square in Z_q");
        return a / (pref * arith::rat_pow(q, D / 2));
    }
    throw std::domain_error("fq_at_special: n must be 3 or 4");
}

FqPoly fq_interpolate(const HalfIntSym& T, long q) {
    int n = T.degree();
    if (T.det_two_t() == 0) throw std::domain_error("fq_interpolate: degenerate T");
    long D = arith::ord(T.det_two_t(), q).value();
    if (D > 16)
        throw BudgetError("fq_interpolate: ord_q(det 2T) beyond the feasibility guard at q=" +
                          std::to_string(q));
    long k0 = (n + 1) / 2;
    std::vector<Rat> xs, ys;
    std::vector<Rat> gamma = gamma_poly(T, q);
    // sample points where gamma vanishes (k = n/2 for anisotropic even
    // degree) carry no information about F; skip past them
    for (long k = k0; static_cast<long>(xs.size()) <= D; ++k) {
        if (k > k0 + D + n + 4) throw std::logic_error("fq_interpolate: not enough sample points");
        Rat x = arith::rat_pow(q, -k);
        Rat gv = eval_poly(gamma, x);
        if (gv == 0) continue;
        Rat btilde = alpha_via_beta(hyperbolic(static_cast<int>(k)), T, q);
        if (2 * k == n) btilde *= 2;
        xs.push_back(x);
        ys.push_back(btilde / gv);
    }
    // Lagrange interpolation for the degree <= D polynomial through the
    // samples, expanded to coefficients
    size_t npts = xs.size();
    std::vector<Rat> coeffs(npts, Rat(0));
    for (size_t i = 0; i < npts; ++i) {
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (size_t j = 0; j < npts; ++j) {
            if (j == i) continue;
            basis = poly_mul(basis, {-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        Rat w = ys[i] / denom;
        for (size_t t = 0; t < basis.size(); ++t) coeffs[t] += w * basis[t];
    }
    FqPoly F;
    F.q = q;
    for (size_t t = 0; t < coeffs.size(); ++t) {
        if (coeffs[t].get_den() != 1)
            throw std::logic_error("fq_interpolate: non-integral coefficient (counting bug)");
        F.coeffs.push_back(coeffs[t].get_num());
    }
    while (F.coeffs.size() > 1 && F.coeffs.back() == 0) F.coeffs.pop_back();
    if (F.coeffs.empty() || F.coeffs[0] != 1)
        throw std::logic_error("fq_interpolate: constant term is not 1 (counting bug)");
    return F;
}

bool check_functional_equation_n3(const FqPoly& F, const HalfIntSym& T, long q) {
    if (T.degree() != 3) throw std::domain_error("check_functional_equation_n3: n must be 3");
    long d = arith::ord(Rat(4) * T.det_t(), q).value();
    int eta = local_invariants(T, q).eta;
    auto coeff = [&](long k) -> Int {
        if (k < 0 || k >= static_cast<long>(F.coeffs.size())) return Int(0);
        return F.coeffs[static_cast<size_t>(k)];
    };
    if (F.degree() > d) return false;
    for (long k = 0; k <= d; ++k) {
        // a_{d-k} = eta q^{2d-4k} a_k, compared without rational powers
        Rat lhs(coeff(d - k));
        Rat rhs = Rat(eta) * arith::rat_pow(q, 2 * d - 4 * k) * Rat(coeff(k));
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace eistheta::local_forms
