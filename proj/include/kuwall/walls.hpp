#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kuwall/lattice.hpp"
#include "kuwall/stability.hpp"

namespace kuwall {

/// Solution set of "v and w have equal slope at (alpha^2, beta)" in alpha^2 > 0.
struct WallEquation {
    enum class Kind { none, at, always };
    Kind kind = Kind::none;
    Rational alpha_sq;

    bool has_root() const { return kind == Kind::at; }
};

/// Re Z(v) Im Z(w) = Re Z(w) Im Z(v) is linear in alpha^2:
///   alpha^2 / 2 * (r X - R x) = y X - Y x   for v = (r, x, y), w = (R, X, Y) at beta.
inline WallEquation wall_between(const Character& v, const Character& w, const Rational& beta)
{
    const Character a = v.at_frame(beta);
    const Character b = w.at_frame(beta);
    const Rational lhs = a.rank() * b.c1() - b.rank() * a.c1();
    const Rational rhs = a.c2() * b.c1() - b.c2() * a.c1();
    if (lhs.is_zero()) return {rhs.is_zero() ? WallEquation::Kind::always : WallEquation::Kind::none, Rational(0)};
    const Rational root = rhs * 2 / lhs;
    if (root.sign() <= 0) return {};
    return {WallEquation::Kind::at, root};
}

struct Decomposition {
    Character sub;
    Character quotient;
    Character target;
};

struct Wall {
    Rational alpha_sq;
    Rational beta;
    std::vector<Decomposition> decompositions;
};

struct WallSearchOptions {
    Rational alpha_sq_min{1, 400};
    /// Maximal number of (rank, c1) cells in the search box.
    unsigned long long search_box_limit = 50'000'000ULL;
    /// 0 means: KUWALL_WORKERS from the environment, else 1.
    unsigned workers = 0;
};

struct WallSearchResult {
    std::vector<Wall> walls;
    /// Decompositions into classes proportional to the target (equal slope everywhere).
    std::vector<Decomposition> proportional;
    unsigned long long box_cells = 0;
};

inline unsigned resolve_workers(unsigned requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KUWALL_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(std::min<long>(n, 256));
    }
    return 1;
}

namespace detail {

inline bool components_less(const Character& a, const Character& b)
{
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    if (a.c1() != b.c1()) return a.c1() < b.c1();
    return a.c2() < b.c2();
}

inline bool admissible_piece(const Character& s, const CharLattice& L)
{
    return discriminant(s).sign() >= 0 && lattice_member(s, L) && satisfies_parity(s);
}

struct Candidate {
    Rational alpha_sq;
    Decomposition d;
};

struct SliceResult {
    std::vector<Candidate> walls;
    std::vector<Decomposition> proportional;
};

} // namespace detail

/// All numerical walls of `target` at `beta` with alpha^2 >= alpha_sq_min.
///
/// Write a sub-character as s = k t + (rho, 0, eta) with k = x / X in (0, 1) (x, X the
/// imaginary parts at beta). Equal slope means eta = alpha^2 rho / 2, and
///   (1 - k) Delta(s) + k Delta(t - s) = k (1 - k) Delta(t) - alpha^2 rho^2,
/// so both discriminants being nonnegative forces alpha^2 rho^2 <= k (1 - k) Delta(t)
/// <= Delta(t) / 4. That bounds |rho| (hence the rank of s) by
/// sqrt(Delta(t) / (4 alpha_sq_min)), and for each (rank, c1) the admissible c2 lie in
/// the interval swept by alpha^2 in [alpha_sq_min, k (1 - k) Delta(t) / rho^2].
/// docs/wall-search.md spells this out.
inline WallSearchResult enumerate_walls(const Character& target, const Rational& beta, const CharLattice& L,
                                        const WallSearchOptions& opt = {})
{
    if (opt.alpha_sq_min.sign() <= 0) throw Error("alpha_sq_min must be positive");
    if (!lattice_member(target, L)) throw Error("target " + target.str() + " is not in the character lattice");

    WallSearchResult result;
    const Character t = target.at_frame(beta).truncated();
    const Rational& R = t.rank();
    const Rational& X = t.c1();
    const Rational& Y = t.c2();
    const Rational D = discriminant(t);
    if (X.sign() <= 0 || D.sign() < 0) return result;

    // Lattice-frame coordinates: s = (r, n1, n2 / 8) at frame f, delta = beta - f.
    const Rational delta = beta - L.frame();
    const Integer bound = isqrt((D / (opt.alpha_sq_min * 4)).floor()) + 1;
    const Integer r_lo = Rational(R.floor() < 0 ? R.floor() : Integer(0)).numerator() - bound;
    const Integer r_hi = Rational(R.ceil() > 0 ? R.ceil() : Integer(0)).numerator() + bound;

    const Integer rows = r_hi - r_lo + 1;
    const Integer cells = rows * (X.ceil() + 2);
    if (cells > Integer(std::to_string(opt.search_box_limit))) {
        throw BoundOverflow("search box of " + cells.get_str() + " cells exceeds the limit " +
                            std::to_string(opt.search_box_limit) + "; raise alpha_sq_min");
    }
    result.box_cells = cells.get_ui();

    auto scan_rank = [&](const Integer& r_int, detail::SliceResult& out) {
        const Rational r(r_int);
        // 0 < x = n1 - delta r < X
        const Integer n1_lo = (delta * r).floor() + 1;
        const Integer n1_hi = (X + delta * r).ceil() - 1;
        for (Integer n1 = n1_lo; n1 <= n1_hi; ++n1) {
            const Rational x = Rational(n1) - delta * r;
            if (x.sign() <= 0 || x >= X) continue;
            const Rational k = x / X;
            const Rational rho = r - k * R;
            // y at beta -> n2 = 8 (y + delta n1 - delta^2 r / 2)
            const Rational shift_y = delta * Rational(n1) - delta * delta * r / 2;
            if (rho.is_zero()) {
                const Rational n2 = (k * Y + shift_y) * 8;
                if (!n2.is_integer()) continue;
                const Character s(r, x, k * Y, beta);
                const Character q = t - s;
                if (detail::components_less(s, q) && detail::admissible_piece(s, L) && detail::admissible_piece(q, L)) {
                    out.proportional.push_back({s, q, t});
                }
                continue;
            }
            // Only the orientation rho > 0 is kept: that piece is the sub (its slope
            // exceeds the target's just below the wall); the complement is checked as q.
            if (rho.sign() < 0) continue;
            const Rational a_max = k * (1 - k) * D / (rho * rho);
            if (a_max < opt.alpha_sq_min) continue;
            const Rational y_lo = k * Y + rho * opt.alpha_sq_min / 2;
            const Rational y_hi = k * Y + rho * a_max / 2;
            const Integer n2_lo = ((y_lo + shift_y) * 8).ceil();
            const Integer n2_hi = ((y_hi + shift_y) * 8).floor();
            for (Integer n2 = n2_lo; n2 <= n2_hi; ++n2) {
                const Rational y = Rational(n2, Integer(8)) - shift_y;
                const Character s(r, x, y, beta);
                const Character q = t - s;
                if (!detail::admissible_piece(s, L) || !detail::admissible_piece(q, L)) continue;
                const WallEquation eq = wall_between(s, t, beta);
                if (!eq.has_root() || eq.alpha_sq < opt.alpha_sq_min) continue;
                out.walls.push_back({eq.alpha_sq, {s, q, t}});
            }
        }
    };

    const unsigned workers = static_cast<unsigned>(
        std::max<long>(1, std::min<long>(resolve_workers(opt.workers), rows.get_si())));
    std::vector<detail::SliceResult> slices(workers);
    auto run = [&](unsigned w) {
        for (Integer r = r_lo + w; r <= r_hi; r += workers) scan_rank(r, slices[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }

    std::map<Rational, std::vector<Decomposition>, std::greater<>> by_alpha;
    for (auto& slice : slices) {
        for (auto& c : slice.walls) by_alpha[c.alpha_sq].push_back(std::move(c.d));
        for (auto& d : slice.proportional) result.proportional.push_back(std::move(d));
    }
    auto by_sub = [](const Decomposition& a, const Decomposition& b) { return detail::components_less(a.sub, b.sub); };
    for (auto& [a2, ds] : by_alpha) {
        std::sort(ds.begin(), ds.end(), by_sub);
        result.walls.push_back({a2, beta, std::move(ds)});
    }
    std::sort(result.proportional.begin(), result.proportional.end(), by_sub);
    return result;
}

inline WallSearchResult enumerate_walls(const Character& target, const Rational& beta, const WallSearchOptions& opt = {})
{
    return enumerate_walls(target, beta, default_lattice(), opt);
}

/// Names a character matches: n*B(i), n*B(i)[1], lambda(a,b).
inline std::vector<std::string> annotate(const Character& v)
{
    std::vector<std::string> out;
    const Character w = v.at_frame(-1);
    if (!w.rank().is_zero() && discriminant(w).is_zero()) {
        const Rational n = abs(w.rank()) / 4;
        // c1 / rk = i/2 - 1/4
        const Rational i = w.c1() / w.rank() * 2 + Rational(1, 2);
        if (n.is_integer() && i.is_integer() && i.numerator().fits_slong_p()) {
            const Character unit = b_char(i.numerator().get_si());
            const bool negative = w.rank().sign() < 0;
            if (same_class(w.truncated(), (negative ? -unit : unit) * n)) {
                std::string name = "B(" + i.str() + ")";
                if (negative) name += "[1]";
                if (n != 1) name = n.str() + "*" + name;
                out.push_back(name);
            }
        }
    }
    if (w.c2() * 32 == w.rank() * -7) {
        const Rational a = w.c1() / 3;
        const Rational b = (a * 4 - w.rank()) / 8;
        if (a.is_integer() && b.is_integer()) out.push_back("lambda(" + a.str() + "," + b.str() + ")");
    }
    return out;
}

struct JHPair {
    Character sub;
    Character quotient;
    std::vector<std::string> sub_annotations;
    std::vector<std::string> quotient_annotations;
};

inline std::vector<JHPair> jh_characters(const Wall& w)
{
    std::vector<JHPair> out;
    for (const auto& d : w.decompositions) out.push_back({d.sub, d.quotient, annotate(d.sub), annotate(d.quotient)});
    return out;
}

} // namespace kuwall
