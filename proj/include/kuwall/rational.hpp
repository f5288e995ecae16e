#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "kuwall/errors.hpp"

namespace kuwall {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}
    Rational(long v) : q_(v) {}
    Rational(long long v) : q_(Integer(std::to_string(v))) {}
    Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den)
    {
        if (den == 0) {
            throw Error("rational with zero denominator");
        }
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long long num, long long den) : Rational(Integer(std::to_string(num)), Integer(std::to_string(den))) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "n" or "p/q" (optional sign, surrounding blanks ignored).
    static Rational parse(std::string_view text)
    {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        auto valid_int = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s) {
                if (c < '0' || c > '9') return false;
            }
            return true;
        };
        auto to_int = [](std::string_view s) {
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            return Integer(std::string(s));
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            if (!valid_int(text)) throw ParseError("not a rational: '" + std::string(text) + "'");
            return Rational(to_int(text));
        }
        auto num = trim(text.substr(0, slash));
        auto den = trim(text.substr(slash + 1));
        if (!valid_int(num) || !valid_int(den)) {
            throw ParseError("not a rational: '" + std::string(text) + "'");
        }
        if (to_int(den) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(to_int(num), to_int(den));
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }

    /// Largest integer <= this.
    Integer floor() const
    {
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    /// Smallest integer >= this.
    Integer ceil() const
    {
        Integer r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    double to_double() const { return q_.get_d(); }

    std::string str() const
    {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw Error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer square root (floor) of a non-negative integer.
inline Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact rational square root when one exists.
inline bool exact_sqrt(const Rational& r, Rational& out)
{
    if (r.sign() < 0) return false;
    const Integer n = isqrt(r.numerator());
    const Integer d = isqrt(r.denominator());
    if (n * n != r.numerator() || d * d != r.denominator()) return false;
    out = Rational(n, d);
    return true;
}

inline Rational pow(const Rational& r, unsigned e)
{
    Rational out(1);
    for (unsigned i = 0; i < e; ++i) out *= r;
    return out;
}

} // namespace kuwall

template <>
struct std::hash<kuwall::Rational> {
    std::size_t operator()(const kuwall::Rational& r) const { return std::hash<std::string>{}(r.str()); }
};
