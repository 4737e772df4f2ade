#pragma once

#include "eistheta/rational.hpp"

namespace eistheta::arith {

// Kronecker symbol (D/m), totally multiplicative in m, period |D| when D is
// a fundamental discriminant.
int kronecker(const Int& D, const Int& m);
int kronecker(long D, long m);

// Primitive quadratic Dirichlet character attached to a fundamental
// discriminant; discriminant 1 is the trivial character.
struct QuadChar {
    long discriminant = 1;
    long conductor = 1;

    bool is_trivial() const { return discriminant == 1; }
    int operator()(const Int& a) const {
        if (is_trivial()) return 1;
        return kronecker(Int(discriminant), a);
    }
    int operator()(long a) const { return (*this)(Int(a)); }

    static QuadChar trivial() { return QuadChar{1, 1}; }
    static QuadChar from_discriminant(long D);
};

// Signed squarefree part of a nonzero rational.
long squarefree_part(const Rat& x);

// Character of Q(sqrt(x))/Q: fundamental discriminant of the extension,
// trivial when x is a rational square.
QuadChar quad_char_of_sqrt(const Rat& x);

// Generalized Bernoulli number B_{k,chi} = f^{k-1} sum_a chi(a) B_k(a/f).
// For the trivial character this is plain B_k (the convention the p-adic
// limit arguments require).
Rat gen_bernoulli(unsigned long k, const QuadChar& chi);

}  // namespace eistheta::arith
