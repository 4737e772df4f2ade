#pragma once

#include "eistheta/rational.hpp"

namespace eistheta::arith {

// Places of Q: a prime number, or real_place for the archimedean place.
inline constexpr long real_place = 0;

// x mod M for a rational with denominator coprime to M.
long rat_mod(const Rat& x, long M);

// Legendre symbol of the unit part is folded in by the callers; this is the
// plain (a|q) for odd prime q, a coprime to q.
int legendre(const Int& a, long q);

// Hilbert symbol <a,b> at a prime or the real place.  Tame formula at odd q,
// the epsilon/omega exponent formula at q = 2, sign inspection at infinity.
int hilbert_symbol(const Rat& a, const Rat& b, long place);

// chi_q(a): 1 if sqrt(a) in Q_q, -1 if Q_q(sqrt a) is the unramified
// quadratic extension, 0 if ramified.
int chi_q(const Rat& a, long q);

}  // namespace eistheta::arith
