#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace eistheta::arith {

// Exact arbitrary-precision integers and rationals. mpq_class keeps every
// value canonical: lowest terms, positive denominator.
using Int = mpz_class;
using Rat = mpq_class;

// Additive q-adic valuation; infinite() encodes ord(0).
struct Valuation {
    long v = 0;
    bool inf = false;

    static Valuation infinity() { return Valuation{0, true}; }
    static Valuation finite(long k) { return Valuation{k, false}; }

    bool is_infinite() const { return inf; }
    long value() const {
        if (inf) throw std::logic_error("Valuation: value() of +inf");
        return v;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.v == b.v;
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.v < b.v;
    }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    Valuation operator+(const Valuation& o) const {
        if (inf || o.inf) return infinity();
        return finite(v + o.v);
    }

    std::string str() const { return inf ? "inf" : std::to_string(v); }
};

std::ostream& operator<<(std::ostream& os, const Valuation& val);

// ord_q(x); +inf iff x = 0.  q must be prime.
Valuation ord(const Int& x, long q);
Valuation ord(const Rat& x, long q);

// ord_q(x - y); +inf iff x = y.
Valuation padic_distance_order(const Rat& x, const Rat& y, long q);

// x = q^ord * unit; returns the unit part of a nonzero rational.
Rat unit_part(const Rat& x, long q);

// q^k for k possibly negative.
Rat rat_pow(long q, long k);
Int int_pow(const Int& base, unsigned long k);

// Value is p-integral (no p in the denominator).
bool is_p_integral(const Rat& x, long q);

bool is_prime(long n);

// Serialization used across file formats: {"num":"...","den":"..."}.
std::string rat_to_decimal_pair(const Rat& x, std::string* den_out);

}  // namespace eistheta::arith
