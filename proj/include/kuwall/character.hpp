#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kuwall/errors.hpp"
#include "kuwall/rational.hpp"

namespace kuwall {

/// Coefficient of the line class in the Clifford modification (1 - 11/32 l).
inline const Rational& modification_coefficient()
{
    static const Rational k(11, 32);
    return k;
}

/// Truncated Chern character on P^3: rank, c1 (coefficient of h), c2 (of l = h^2)
/// and, when known, c3 (of h^3).
///
/// `frame` records the twist e^{-frame*h} already applied to the components, so
/// two characters with different frames can represent the same class. Arithmetic
/// between mixed frames converts the right operand into the left operand's frame.
class Character {
public:
    Character() = default;
    Character(Rational rank, Rational c1, Rational c2, Rational frame = 0)
        : rank_(std::move(rank)), c1_(std::move(c1)), c2_(std::move(c2)), frame_(std::move(frame))
    {
    }
    Character(Rational rank, Rational c1, Rational c2, std::optional<Rational> c3, Rational frame)
        : rank_(std::move(rank)), c1_(std::move(c1)), c2_(std::move(c2)), c3_(std::move(c3)), frame_(std::move(frame))
    {
    }

    const Rational& rank() const { return rank_; }
    const Rational& c1() const { return c1_; }
    const Rational& c2() const { return c2_; }
    const std::optional<Rational>& c3() const { return c3_; }
    bool has_c3() const { return c3_.has_value(); }
    const Rational& frame() const { return frame_; }

    /// Same class expressed in the frame `beta`.
    Character at_frame(const Rational& beta) const;
    /// Same class in the storage frame beta = 0.
    Character canonical() const { return at_frame(0); }
    /// Drops the degree-3 part.
    Character truncated() const { return Character(rank_, c1_, c2_, frame_); }

    Character operator-() const
    {
        std::optional<Rational> c3;
        if (c3_) c3 = -*c3_;
        return Character(-rank_, -c1_, -c2_, c3, frame_);
    }
    Character& operator+=(const Character& other);
    Character& operator-=(const Character& other) { return *this += -other; }
    Character& operator*=(const Rational& s)
    {
        rank_ *= s;
        c1_ *= s;
        c2_ *= s;
        if (c3_) *c3_ *= s;
        return *this;
    }
    friend Character operator+(Character a, const Character& b) { return a += b; }
    friend Character operator-(Character a, const Character& b) { return a -= b; }
    friend Character operator*(Character a, const Rational& s) { return a *= s; }
    friend Character operator*(const Rational& s, Character a) { return a *= s; }

    /// Component-wise equality including the frame tag.
    friend bool operator==(const Character& a, const Character& b)
    {
        return a.frame_ == b.frame_ && a.rank_ == b.rank_ && a.c1_ == b.c1_ && a.c2_ == b.c2_ && a.c3_ == b.c3_;
    }

    bool is_zero() const { return rank_.is_zero() && c1_.is_zero() && c2_.is_zero() && (!c3_ || c3_->is_zero()); }

    /// "(rk, c1, c2[, c3])" in the character's own frame.
    std::string str() const
    {
        std::ostringstream os;
        os << '(' << rank_ << ", " << c1_ << ", " << c2_;
        if (c3_) os << ", " << *c3_;
        os << ')';
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Character& v)
    {
        os << v.str();
        if (!v.frame_.is_zero()) os << "@beta=" << v.frame_;
        return os;
    }

private:
    Rational rank_, c1_, c2_;
    std::optional<Rational> c3_;
    Rational frame_;
};

/// e^{-beta h} * v; the frame tag moves by beta.
inline Character twist(const Character& v, const Rational& beta)
{
    if (beta.is_zero()) return v;
    const Rational b2 = beta * beta / 2;
    std::optional<Rational> c3;
    if (v.c3()) c3 = *v.c3() - beta * v.c2() + b2 * v.c1() - beta * b2 / 3 * v.rank();
    return Character(v.rank(), v.c1() - beta * v.rank(), v.c2() - beta * v.c1() + b2 * v.rank(), c3,
                     v.frame() + beta);
}

inline Character Character::at_frame(const Rational& beta) const { return twist(*this, beta - frame_); }

inline Character& Character::operator+=(const Character& other)
{
    const Character o = other.frame_ == frame_ ? other : other.at_frame(frame_);
    rank_ += o.rank_;
    c1_ += o.c1_;
    c2_ += o.c2_;
    if (c3_ && o.c3_) {
        *c3_ += *o.c3_;
    } else {
        c3_.reset();
    }
    return *this;
}

/// True when both represent the same class (compared in a common frame).
inline bool same_class(const Character& a, const Character& b)
{
    return a.truncated() == b.truncated().at_frame(a.frame()) &&
           (!a.has_c3() || !b.has_c3() || *a.c3() == *b.at_frame(a.frame()).c3());
}

/// ch(Forg F) -> ch_{B0}(F): multiplication by (1 - 11/32 l) in the truncated ring.
inline Character modify(const Character& ordinary)
{
    const Rational& k = modification_coefficient();
    std::optional<Rational> c3;
    if (ordinary.c3()) c3 = *ordinary.c3() - k * ordinary.c1();
    return Character(ordinary.rank(), ordinary.c1(), ordinary.c2() - k * ordinary.rank(), c3, ordinary.frame());
}

/// Inverse of `modify`.
inline Character unmodify(const Character& modified)
{
    const Rational& k = modification_coefficient();
    std::optional<Rational> c3;
    if (modified.c3()) c3 = *modified.c3() + k * modified.c1();
    return Character(modified.rank(), modified.c1(), modified.c2() + k * modified.rank(), c3, modified.frame());
}

/// Bogomolov-type discriminant c1^2 - 2 rk c2. Independent of the frame.
inline Rational discriminant(const Character& v) { return v.c1() * v.c1() - Rational(2) * v.rank() * v.c2(); }

/// Homological shift [n]: multiplies the class by (-1)^n.
inline Character shift(const Character& v, long n)
{
    return (n % 2 == 0) ? v : -v;
}

/// Class of (-) (x)_{B0} B1: multiplication by e^{h/2}, frame kept.
///
/// The degree-3 extension c3 + c2/2 + c1/8 + rk/48 is carried along but is not
/// backed by any validated degree-3 data; callers relying on it should check
/// `half_twist_c3_validated()`.
inline Character half_twist(const Character& v)
{
    const Rational h(1, 2);
    std::optional<Rational> c3;
    if (v.c3()) c3 = *v.c3() + h * v.c2() + Rational(1, 8) * v.c1() + Rational(1, 48) * v.rank();
    return Character(v.rank(), v.c1() + h * v.rank(), v.c2() + h * v.c1() + Rational(1, 8) * v.rank(), c3,
                     v.frame());
}

constexpr bool half_twist_c3_validated() { return false; }

/// Character of B_i in the beta = -1 frame: (4, 2i-1, (2i-1)^2/8), stored canonically.
inline Character b_char(long i)
{
    const Rational m(2 * i - 1);
    return Character(4, m, m * m / 8, Rational(-1)).canonical();
}

/// A Mukai-lattice generator image in the beta = -1 frame (see mukai.hpp).
inline Character lambda1_char() { return Character(4, 3, Rational(-7, 8), Rational(-1)).canonical(); }
inline Character lambda2_char() { return Character(-8, 0, Rational(7, 4), Rational(-1)).canonical(); }

/// Named characters.
///   E_C     twisted-cubic object, class of 2*lambda1 + lambda2: (0, 6, 0) at beta = -1
///   M_l     line object, class of lambda1 + lambda2: (-4, 3, 7/8) at beta = -1
///   lambda1 (4, 3, -7/8) and lambda2 (-8, 0, 7/4) at beta = -1, differences of the two above
///   B(i)    Clifford bimodules, see b_char
inline std::map<std::string, Character> default_presets()
{
    return {
        {"E_C", Character(0, 6, 0, Rational(-1)).canonical()},
        {"M_l", Character(-4, 3, Rational(7, 8), Rational(-1)).canonical()},
        {"lambda1", lambda1_char()},
        {"lambda2", lambda2_char()},
    };
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline long parse_long(std::string_view s, std::string_view context)
{
    const Rational r = Rational::parse(s);
    if (!r.is_integer() || !r.numerator().fits_slong_p()) {
        throw ParseError("expected an integer in '" + std::string(context) + "'");
    }
    return r.numerator().get_si();
}

} // namespace detail

/// Parses `rk,c1,c2[,c3][@beta=<q>]`, a preset name, or `B(i)`; presets accept a
/// trailing shift `[n]`. The result is always in the canonical frame.
inline Character parse_character(std::string_view text,
                                 const std::map<std::string, Character>& presets = default_presets())
{
    std::string_view body = detail::trim(text);
    if (body.empty()) throw ParseError("empty character");

    Rational frame(0);
    if (const auto at = body.find('@'); at != std::string_view::npos) {
        std::string_view suffix = detail::trim(body.substr(at + 1));
        body = detail::trim(body.substr(0, at));
        if (suffix.substr(0, 5) != "beta=") throw ParseError("expected '@beta=<q>' in '" + std::string(text) + "'");
        frame = Rational::parse(suffix.substr(5));
    }

    const bool numeric = !body.empty() && (std::isdigit(static_cast<unsigned char>(body.front())) ||
                                           body.front() == '-' || body.front() == '+');
    if (numeric) {
        const auto parts = detail::split(body, ',');
        if (parts.size() != 3 && parts.size() != 4) {
            throw ParseError("a character needs 3 or 4 entries: '" + std::string(text) + "'");
        }
        std::optional<Rational> c3;
        if (parts.size() == 4) c3 = Rational::parse(parts[3]);
        return Character(Rational::parse(parts[0]), Rational::parse(parts[1]), Rational::parse(parts[2]), c3, frame)
            .canonical();
    }

    if (!frame.is_zero()) throw ParseError("presets are classes; drop the frame suffix in '" + std::string(text) + "'");

    long shift_by = 0;
    if (body.back() == ']') {
        const auto open = body.rfind('[');
        if (open == std::string_view::npos) throw ParseError("unbalanced shift in '" + std::string(text) + "'");
        shift_by = detail::parse_long(body.substr(open + 1, body.size() - open - 2), text);
        body = detail::trim(body.substr(0, open));
    }

    Character base;
    if (body.size() > 3 && body.substr(0, 2) == "B(" && body.back() == ')') {
        base = b_char(detail::parse_long(body.substr(2, body.size() - 3), text));
    } else if (auto it = presets.find(std::string(body)); it != presets.end()) {
        base = it->second.canonical();
    } else {
        throw ParseError("unknown character preset '" + std::string(body) + "'");
    }
    return shift(base, shift_by);
}

} // namespace kuwall
