#pragma once

#include "eistheta/rational.hpp"

#include <string>
#include <vector>

namespace eistheta {

using arith::Int;
using arith::Rat;

// Half-integral symmetric matrix T of degree n, stored through the integer
// matrix 2T (symmetric, even diagonal).  This is the universal index type
// for Fourier coefficients and the argument type of all local computations.
class HalfIntSym {
  public:
    HalfIntSym() = default;

    // entries: row-major n*n integer matrix 2T.
    static HalfIntSym from_two_t(int n, std::vector<Int> entries);

    // T = diag(d1..dn), i.e. 2T = diag(2 d1..2 dn).
    static HalfIntSym diag(const std::vector<long>& d);

    int degree() const { return n_; }
    const Int& two_t(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<Int>& two_t_entries() const { return e_; }

    Int det_two_t() const;          // det(2T), exact
    Rat det_t() const;              // det(T) = det(2T) / 2^n

    bool is_positive_definite() const;
    bool is_positive_semidefinite() const;

    // T[U] = U' T U for an integer matrix U (not necessarily unimodular).
    HalfIntSym transform(const std::vector<Int>& U) const;

    // Direct sum T ⊥ other.
    HalfIntSym direct_sum(const HalfIntSym& other) const;

    // Leading principal submatrix of degree k, or arbitrary index subset.
    HalfIntSym principal_submatrix(const std::vector<int>& idx) const;

    // Degree n+1 matrix T ⊥ (0).
    HalfIntSym pad_with_zero() const;

    // Canonical row-major serialization of 2T: "a,b,...".
    std::string serialize() const;
    static HalfIntSym deserialize(int n, const std::string& s);

    friend bool operator==(const HalfIntSym& a, const HalfIntSym& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator<(const HalfIntSym& a, const HalfIntSym& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
        return false;
    }

  private:
    int n_ = 0;
    std::vector<Int> e_;  // row-major 2T
};

// det of a general square integer matrix (Bareiss, exact).
Int int_det(const std::vector<Int>& a, int n);

// Some rational diagonalization of T as a quadratic form: values b_1..b_n
// with T ~ <b_1,...,b_n> over Q.  Requires det T != 0.
std::vector<Rat> diagonalize_form(const HalfIntSym& T);

// H_k: orthogonal sum of k hyperbolic planes ((0,1/2),(1/2,0)).
HalfIntSym hyperbolic(int k);

// U_0 = 1 ⊥ eps with chi_p(-eps) = -1 (smallest positive such eps).
HalfIntSym u0(long p);

// U_0 ⊥ p U_0, the local shape of S^(p) at p.
HalfIntSym u0_perp_pu0(long p);

}  // namespace eistheta
