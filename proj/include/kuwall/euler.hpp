#pragma once

#include "kuwall/character.hpp"

namespace kuwall {

inline const Rational& require_c3(const Character& v)
{
    if (!v.c3()) throw MissingDegreeThree("character " + v.str() + " has no degree-3 part");
    return *v.c3();
}

/// Riemann-Roch on P^3 for an ordinary character in the frame beta = 0.
inline Rational chi_p3(const Character& ordinary)
{
    const Character v = ordinary.at_frame(0);
    return require_c3(v) + Rational(2) * v.c2() + Rational(11, 6) * v.c1() + v.rank();
}

/// chi(O(n)) = binom(n + 3, 3), valid for every integer n.
inline Rational chi_line_bundle(long n)
{
    return Rational((n + 1) * (n + 2) * (n + 3), 6);
}

/// ch(O(n)) with the full degree-3 part.
inline Character line_bundle(long n)
{
    const Rational m(n);
    return Character(1, m, m * m / 2, m * m * m / 6, Rational(0));
}

/// chi_forg - c2 - c1/2 - k rk for the beta = -1 modified character v_b0.
inline Rational chi_b2_chain_with(const Character& v_b0, const Rational& chi_forg, const Rational& k)
{
    const Character v = v_b0.at_frame(-1);
    return chi_forg - v.c2() - v.c1() / 2 - k * v.rank();
}

/// The chain with the constant 13/16 as printed.
inline Rational chi_b2_chain(const Character& v_b0, const Rational& chi_forg)
{
    return chi_b2_chain_with(v_b0, chi_forg, Rational(13, 16));
}

/// The chain with the constant forced by the 11/32 modification (11/32 = 1/32 + 5/16).
inline Rational chi_b2_chain_derived(const Character& v_b0, const Rational& chi_forg)
{
    return chi_b2_chain_with(v_b0, chi_forg, Rational(11, 32));
}

/// First line of the chain: chi(O, F(-h)) for an ordinary full character F.
/// twist() only re-frames the class, so the components of F(-h) are re-tagged as an
/// ordinary (frame 0) character before evaluating.
inline Rational chi_twisted_down(const Character& ordinary)
{
    const Character t = twist(ordinary.at_frame(0), 1);
    return chi_p3(Character(t.rank(), t.c1(), t.c2(), t.c3(), Rational(0)));
}

} // namespace kuwall
