#include <gtest/gtest.h>

#include <random>

#include "kuwall/stability.hpp"

using namespace kuwall;

namespace {

Character at_m1(Rational r, Rational c1, Rational c2) { return Character(r, c1, c2, Rational(-1)); }

Rational random_rational(std::mt19937_64& rng, long h = 30)
{
    return Rational(static_cast<long>(rng() % (2 * h + 1)) - h, 1 + static_cast<long>(rng() % 10));
}

} // namespace

TEST(Stability, ParamsRejectNonPositiveAlpha)
{
    EXPECT_THROW(StabilityParams(0, 1), Error);
    EXPECT_THROW(StabilityParams(Rational(-1, 4), 1), Error);
}

TEST(Stability, CentralChargeExamples)
{
    EXPECT_EQ(central_charge(at_m1(0, 6, 0), {Rational(9, 16), -1}), (ChargeValue{0, 6}));
    EXPECT_EQ(central_charge(at_m1(4, 1, Rational(1, 8)), {Rational(1, 16), -1}), (ChargeValue{0, 1}));
    EXPECT_EQ(central_charge(Character(0, 0, 0), {1, 0}), (ChargeValue{0, 0}));
}

TEST(Stability, SlopeExamples)
{
    for (const auto& a2 : {Rational(9, 16), Rational(1, 16), Rational(1, 400), Rational(5)}) {
        EXPECT_EQ(slope(at_m1(0, 6, 0), {a2, -1}), Slope(0));
    }
    EXPECT_EQ(slope(at_m1(-4, 3, Rational(-9, 8)), {Rational(9, 16), -1}), Slope(0));
    EXPECT_TRUE(slope(at_m1(4, 0, 1), {1, -1}).is_infinite());
    EXPECT_EQ(slope(at_m1(4, 0, 1), {1, -1}), Slope::infinite());
    EXPECT_GT(Slope::infinite(), Slope(1000000));
    EXPECT_EQ(Slope::infinite().str(), "inf");
}

TEST(Stability, WeaklyPositive)
{
    EXPECT_TRUE(weakly_positive(at_m1(0, 6, 0), {1, -1}));
    EXPECT_TRUE(weakly_positive(Character(0, 0, 0), {1, -1}));
    EXPECT_FALSE(weakly_positive(at_m1(0, -6, 0), {1, -1}));
    EXPECT_TRUE(weakly_positive(at_m1(0, 0, 1), {1, -1}));  // skyscraper-like: re = -1
    EXPECT_FALSE(weakly_positive(at_m1(4, 0, 0), {1, -1})); // im = 0, re = 2 > 0
}

TEST(Stability, Rotation)
{
    EXPECT_EQ(rotate_second_tilt({0, 6}), (ChargeValue{6, 0}));
    EXPECT_EQ(rotate_second_tilt({0, 0}), (ChargeValue{0, 0}));
    const ChargeValue z{Rational(3, 7), Rational(-2, 5)};
    EXPECT_EQ(rotate_second_tilt(rotate_second_tilt(rotate_second_tilt(rotate_second_tilt(z)))), z);
}

TEST(Stability, ShiftNegatesCharge)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Character v(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng, 3));
        const StabilityParams p(Rational(1 + static_cast<long>(rng() % 50), 16), random_rational(rng, 4));
        EXPECT_EQ(central_charge(shift(v, 1), p), -central_charge(v, p));
    }
}

TEST(Stability, ExpandedSlopeFormulaAgrees)
{
    std::mt19937_64 rng(2);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const Character v(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng, 3));
        const StabilityParams p(Rational(1 + static_cast<long>(rng() % 50), 16), random_rational(rng, 4));
        const Slope a = slope(v, p), b = slope_expanded(v, p);
        EXPECT_EQ(a, b);
        compared += !a.is_infinite();
    }
    EXPECT_GT(compared, 900);
}

TEST(Stability, SlopeScaleInvariance)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const Character v(random_rational(rng), random_rational(rng), random_rational(rng));
        const StabilityParams p(Rational(1 + static_cast<long>(rng() % 50), 16), random_rational(rng, 4));
        const Rational s(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 5));
        EXPECT_EQ(slope(v * s, p), slope(v, p));
    }
}

TEST(Stability, CompareSlopesMatchesDivision)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 1000; ++i) {
        const ChargeValue a{random_rational(rng), random_rational(rng)};
        const ChargeValue b{random_rational(rng), random_rational(rng)};
        EXPECT_EQ(compare_slopes(a, b), slope_of(a) <=> slope_of(b));
    }
}

// Equal slopes before rotation <=> rotated charges are positively proportional
// (for charges with positive imaginary part).
TEST(Stability, WallsAreRotationInvariant)
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        ChargeValue a{random_rational(rng, 5), Rational(1 + static_cast<long>(rng() % 5))};
        ChargeValue b{random_rational(rng, 5), Rational(1 + static_cast<long>(rng() % 5))};
        if (i % 3 == 0) b = {a.re * 2, a.im * 2};
        const bool equal = compare_slopes(a, b) == 0;
        const ChargeValue ra = rotate_second_tilt(a), rb = rotate_second_tilt(b);
        const bool proportional = ra.re * rb.im == rb.re * ra.im && (ra.re * rb.re).sign() >= 0;
        EXPECT_EQ(equal, proportional);
    }
}
