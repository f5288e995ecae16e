#pragma once

#include <array>
#include <vector>

#include "kuwall/character.hpp"

namespace kuwall {

using IntVec3 = std::array<Integer, 3>;

/// Integer coordinates (rank, c1, 8*c2) of v in its own frame.
inline IntVec3 lattice_coordinates(const Character& v)
{
    const Rational c2x8 = v.c2() * 8;
    if (!v.rank().is_integer() || !v.c1().is_integer() || !c2x8.is_integer()) {
        throw NonIntegralCoordinates("character " + v.str() + " has non-integral (rank, c1, 8*c2)");
    }
    return {v.rank().numerator(), v.c1().numerator(), c2x8.numerator()};
}

/// Row-style Hermite normal form of the span of `rows` (3 columns). Rows of the
/// result are nonzero, upper triangular with positive pivots and entries above a
/// pivot reduced into [0, pivot).
inline std::vector<IntVec3> hermite_normal_form(std::vector<IntVec3> rows)
{
    std::vector<IntVec3> basis;
    for (int col = 0; col < 3 && !rows.empty(); ++col) {
        // Euclid on column `col` until at most one row has a nonzero entry there.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            }
            if (best == rows.size()) break;
            bool reduced = false;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
                for (int k = 0; k < 3; ++k) rows[i][k] -= q * rows[best][k];
                reduced = true;
            }
            if (!reduced) {
                IntVec3 pivot = rows[best];
                if (pivot[col] < 0) {
                    for (auto& x : pivot) x = -x;
                }
                basis.push_back(pivot);
                rows.erase(rows.begin() + static_cast<long>(best));
                break;
            }
        }
        std::erase_if(rows, [](const IntVec3& r) { return r[0] == 0 && r[1] == 0 && r[2] == 0; });
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        int col = 0;
        while (basis[i][col] == 0) ++col;
        for (std::size_t j = 0; j < i; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), basis[j][col].get_mpz_t(), basis[i][col].get_mpz_t());
            for (int k = 0; k < 3; ++k) basis[j][k] -= q * basis[i][k];
        }
    }
    return basis;
}

/// Membership of an integer vector in the span of an HNF basis.
inline bool in_span(const std::vector<IntVec3>& hnf, IntVec3 x)
{
    for (const auto& row : hnf) {
        int col = 0;
        while (row[col] == 0) ++col;
        for (int c = 0; c < col; ++c) {
            if (x[c] != 0) return false;
        }
        if (x[col] % row[col] != 0) return false;
        const Integer q = x[col] / row[col];
        for (int k = 0; k < 3; ++k) x[k] -= q * row[k];
    }
    return x[0] == 0 && x[1] == 0 && x[2] == 0;
}

class CharLattice {
public:
    CharLattice(std::vector<Character> generators, Rational frame) : frame_(std::move(frame))
    {
        std::vector<IntVec3> rows;
        for (auto& g : generators) {
            g = g.at_frame(frame_).truncated();
            rows.push_back(lattice_coordinates(g));
        }
        generators_ = std::move(generators);
        basis_ = hermite_normal_form(std::move(rows));
    }

    const std::vector<Character>& generators() const { return generators_; }
    const std::vector<IntVec3>& basis() const { return basis_; }
    const Rational& frame() const { return frame_; }

    /// |det| of the basis when it has full rank, else 0.
    Integer index() const
    {
        if (basis_.size() != 3) return 0;
        return basis_[0][0] * basis_[1][1] * basis_[2][2];
    }

private:
    std::vector<Character> generators_;
    Rational frame_;
    std::vector<IntVec3> basis_;
};

/// Span of lambda1, lambda2, B1, B2, B3 in the beta = -1 frame.
inline const CharLattice& default_lattice()
{
    static const CharLattice lattice({lambda1_char(), lambda2_char(), b_char(1), b_char(2), b_char(3)}, Rational(-1));
    return lattice;
}

/// v is converted into L's frame first. Integral coordinates are frame independent
/// for integer frames, so the conversion never hides a NonIntegralCoordinates case.
inline bool lattice_member(const Character& v, const CharLattice& L = default_lattice())
{
    return in_span(L.basis(), lattice_coordinates(v.at_frame(L.frame())));
}

/// Parity condition from first principles: undo the modification in the frame
/// beta = 0 and require an ordinary character (R, C, D/2) with 4 | R and C, D
/// integers of the same parity.
inline bool satisfies_parity(const Character& v)
{
    const Character ordinary = unmodify(v.at_frame(0));
    const Rational D = ordinary.c2() * 2;
    if (!ordinary.rank().is_integer() || !ordinary.c1().is_integer() || !D.is_integer()) return false;
    if (ordinary.rank().numerator() % 4 != 0) return false;
    const Integer diff = ordinary.c1().numerator() - D.numerator();
    return diff % 2 == 0;
}

/// The same test with the printed beta = -1 expression (R, C + R, D/2 + C - 5/16 R);
/// kept only for comparison.
inline bool satisfies_parity_printed(const Character& v)
{
    const Character w = v.at_frame(-1);
    const Rational& R = w.rank();
    const Rational C = w.c1() - R;
    const Rational D = (w.c2() - C + Rational(5, 16) * R) * 2;
    if (!R.is_integer() || !C.is_integer() || !D.is_integer()) return false;
    if (R.numerator() % 4 != 0) return false;
    return (C.numerator() - D.numerator()) % 2 == 0;
}

} // namespace kuwall
