#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "kuwall/character.hpp"

namespace kuwall {

struct StabilityParams {
    Rational alpha_sq;
    Rational beta;

    StabilityParams(Rational a2, Rational b) : alpha_sq(std::move(a2)), beta(std::move(b))
    {
        if (alpha_sq.sign() <= 0) throw Error("alpha^2 must be positive, got " + alpha_sq.str());
    }
};

struct ChargeValue {
    Rational re;
    Rational im;

    friend bool operator==(const ChargeValue&, const ChargeValue&) = default;
    ChargeValue operator-() const { return {-re, -im}; }
};

inline ChargeValue central_charge(const Character& v, const StabilityParams& p)
{
    const Character t = v.at_frame(p.beta);
    return {p.alpha_sq * t.rank() / 2 - t.c2(), t.c1()};
}

/// An element of Q u {+inf}.
class Slope {
public:
    static Slope infinite() { return Slope(); }
    Slope(Rational value) : finite_(true), value_(std::move(value)) {}

    bool is_infinite() const { return !finite_; }
    const Rational& value() const
    {
        if (!finite_) throw Error("slope is +inf");
        return value_;
    }
    std::string str() const { return finite_ ? value_.str() : "inf"; }

    friend bool operator==(const Slope& a, const Slope& b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Slope& a, const Slope& b)
    {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.value_ <=> b.value_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

private:
    Slope() = default;
    bool finite_ = false;
    Rational value_;
};

inline Slope slope_of(const ChargeValue& z)
{
    if (z.im.is_zero()) return Slope::infinite();
    return Slope(-z.re / z.im);
}

inline Slope slope(const Character& v, const StabilityParams& p) { return slope_of(central_charge(v, p)); }

/// The expanded form (ch2 - (alpha^2 + beta^2)/2 rk) / (ch1 - beta rk) - beta,
/// with ch the untwisted modified character. Used as an independent check of `slope`.
inline Slope slope_expanded(const Character& v, const StabilityParams& p)
{
    const Character u = v.at_frame(0);
    const Rational den = u.c1() - p.beta * u.rank();
    if (den.is_zero()) return Slope::infinite();
    return Slope((u.c2() - (p.alpha_sq + p.beta * p.beta) / 2 * u.rank()) / den - p.beta);
}

/// Orders the slopes of two charges by cross-multiplication.
inline std::strong_ordering compare_slopes(const ChargeValue& a, const ChargeValue& b)
{
    const bool ia = a.im.is_zero();
    const bool ib = b.im.is_zero();
    if (ia || ib) return ia <=> ib;
    // mu(a) - mu(b) = (b.re a.im - a.re b.im) / (a.im b.im)
    const Rational num = b.re * a.im - a.re * b.im;
    const int s = num.sign() * a.im.sign() * b.im.sign();
    return s <=> 0;
}

inline bool weakly_positive(const Character& v, const StabilityParams& p)
{
    const ChargeValue z = central_charge(v, p);
    return z.im.sign() > 0 || (z.im.is_zero() && z.re.sign() <= 0);
}

/// Multiplication by -i.
inline ChargeValue rotate_second_tilt(const ChargeValue& z) { return {z.im, -z.re}; }

} // namespace kuwall
