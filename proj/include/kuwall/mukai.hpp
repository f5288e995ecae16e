#pragma once

#include "kuwall/character.hpp"

namespace kuwall {

/// a*lambda1 + b*lambda2 in the A2 lattice.
struct MukaiVector {
    long a = 0;
    long b = 0;

    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
    friend MukaiVector operator+(MukaiVector v, const MukaiVector& w) { return {v.a + w.a, v.b + w.b}; }
};

/// Gram matrix [[2, -1], [-1, 2]].
inline long pairing(const MukaiVector& v, const MukaiVector& w)
{
    return 2 * v.a * w.a - v.a * w.b - v.b * w.a + 2 * v.b * w.b;
}

/// Sign convention only: chi(v, w) = -(v, w).
inline long euler(const MukaiVector& v, const MukaiVector& w) { return -pairing(v, w); }

inline long moduli_dim(const MukaiVector& v)
{
    const long sq = pairing(v, v);
    if (sq < -2) throw NegativeDim("v^2 = " + std::to_string(sq) + " < -2");
    return sq + 2;
}

inline Character to_character(const MukaiVector& v)
{
    return lambda1_char() * Rational(v.a) + lambda2_char() * Rational(v.b);
}

inline Rational delta_on_lattice(const MukaiVector& v) { return discriminant(to_character(v)); }

/// Closed form of delta_on_lattice.
inline long delta_closed_form(const MukaiVector& v)
{
    return 9 * v.a * v.a + 7 * (v.a - 2 * v.b) * (v.a - 2 * v.b);
}

} // namespace kuwall
