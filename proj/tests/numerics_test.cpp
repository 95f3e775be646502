#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/numerics/real.hpp"
#include "sisqsd/numerics/summation.hpp"

using namespace sisqsd;

namespace {

const Precision kP256{256};

}  // namespace

TEST(Real, ArithmeticKeepsWidestPrecision) {
    const Real a(1, Precision{64});
    const Real b(3, Precision{300});
    const Real c = a / b;
    EXPECT_EQ(c.precision().bits, 300);
    EXPECT_EQ((c * 3 - 1).sign(), 0);
    EXPECT_EQ((2 - Real(0.5, kP256)).to_double(), 1.5);
    EXPECT_EQ((1 / Real(4, kP256)).to_double(), 0.25);
}

TEST(Real, ParseIsExactAtWorkingPrecision) {
    const Real tenth = Real::parse("0.1", Precision{1000});
    const Real from_double(0.1, Precision{1000});
    EXPECT_NE(tenth, from_double);
    EXPECT_TRUE(abs(tenth * 10 - 1) < exp2i(-990, Precision{1000}));
    EXPECT_THROW(Real::parse("abc", kP256), std::invalid_argument);
    EXPECT_THROW(Real::parse("", kP256), std::invalid_argument);
}

TEST(Real, ScientificFormatting) {
    EXPECT_EQ(Real(0.0075234567, kP256).to_scientific(6), "7.52346e-03");
    EXPECT_EQ(Real::parse("3.04e-61", kP256).to_scientific(2), "3.0e-61");
    // round-half-even on an exactly representable tie
    EXPECT_EQ(Real(0.125, kP256).to_scientific(2), "1.2e-01");
    EXPECT_EQ(Real::nan(kP256).to_scientific(6), "nan");
}

TEST(Real, ComparisonsWithBuiltins) {
    const Real x(2.5, kP256);
    EXPECT_TRUE(x > 2);
    EXPECT_TRUE(3 > x);
    EXPECT_TRUE(x == 2.5);
    EXPECT_FALSE(Real::nan(kP256) < 1);
    EXPECT_FALSE(Real::nan(kP256) >= 1);
}

TEST(DefaultContext, LargestTableCell) {
    // ceil(3.5 * 100 * log2(10)) = ceil(1162.67...)
    const PrecisionContext ctx = default_context(100, 10.0);
    EXPECT_EQ(ctx.significand_bits(), 1163);
    EXPECT_GE(ctx.significand_bits(), 1163);
    EXPECT_EQ(ctx.fixed_point_tol(), exp2i(-581, ctx.precision()));
}

TEST(DefaultContext, FloorIs256Bits) {
    EXPECT_EQ(default_context(2, 2.0).significand_bits(), 256);
    EXPECT_EQ(default_context(1, 0.5).significand_bits(), 256);
}

TEST(DefaultContext, BelowThresholdUsesReciprocal) {
    EXPECT_EQ(default_context(100, 0.1).significand_bits(), default_context(100, 10.0).significand_bits());
}

TEST(DefaultContext, SatisfiesInvariants) {
    const PrecisionContext ctx = default_context(50, 5.0);
    EXPECT_GE(ctx.significand_bits(), 64);
    EXPECT_TRUE(ctx.fixed_point_tol() > 0 && ctx.fixed_point_tol() < 1);
    EXPECT_TRUE(ctx.equality_tol() > 0 && ctx.equality_tol() < 1);
    EXPECT_TRUE(ctx.fixed_point_tol() >= exp2i(8 - ctx.significand_bits(), ctx.precision()));
    // reconstructing from its own fields passes the constructor checks
    EXPECT_NO_THROW(PrecisionContext(ctx.significand_bits(), ctx.fixed_point_tol(), ctx.equality_tol()));
}

TEST(PrecisionContext, RejectsBadConfigurations) {
    const Precision p{128};
    EXPECT_THROW(PrecisionContext(32, Real(1e-3, p), Real(1e-3, p)), PrecisionConfigError);
    EXPECT_THROW(PrecisionContext(128, Real(0, p), Real(1e-3, p)), PrecisionConfigError);
    EXPECT_THROW(PrecisionContext(128, Real(1e-3, p), Real(1, p)), PrecisionConfigError);
    EXPECT_THROW(PrecisionContext(128, exp2i(-125, p), Real(1e-3, p)), PrecisionConfigError);
    EXPECT_NO_THROW(PrecisionContext(128, exp2i(-120, p), Real(1e-3, p)));
    EXPECT_THROW(default_context(0, 1.0), InvalidParameter);
}

TEST(StableSum, EmptyIsZero) {
    const std::vector<Real> none;
    EXPECT_TRUE(stable_sum(none, kP256).is_zero());
}

TEST(StableSum, Ones) {
    const std::vector<Real> ones(3, Real(1, kP256));
    EXPECT_EQ(stable_sum(ones, kP256), 3);
}

TEST(StableSum, SurvivesCancellation) {
    const std::vector<Real> v{Real::parse("1e40", kP256), Real(1, kP256), Real::parse("-1e40", kP256)};
    EXPECT_EQ(stable_sum(v, kP256), 1);
    // naive left-to-right summation in double loses the 1 entirely
    EXPECT_EQ(1e40 + 1.0 - 1e40, 0.0);
}

TEST(StableSum, NonFiniteIsAConfigurationError) {
    std::vector<Real> v{Real(1, kP256), Real::nan(kP256)};
    EXPECT_THROW(stable_sum(v, kP256), PrecisionConfigError);
}

TEST(StableSum, PermutationInvariant) {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
    std::uniform_int_distribution<int> exponent(-60, 60);
    const PrecisionContext ctx = PrecisionContext::with_bits(256);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Real> v;
        for (int i = 0; i < 40; ++i) {
            v.push_back(Real(mantissa(rng), kP256) * exp2i(exponent(rng), kP256));
        }
        const Real reference = stable_sum(v, kP256);
        std::shuffle(v.begin(), v.end(), rng);
        EXPECT_TRUE(rel_diff(stable_sum(v, kP256), reference) <= ctx.equality_tol());
    }
}

TEST(RelDiff, Examples) {
    EXPECT_TRUE(rel_diff(Real(5, kP256), Real(5, kP256)).is_zero());
    EXPECT_TRUE(rel_diff(Real(0, kP256), Real(0, kP256)).is_zero());
    EXPECT_EQ(rel_diff(Real(1, kP256), Real(2, kP256)), 0.5);
}

TEST(RelDiff, SymmetricAndReflexive) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const Real a(u(rng), kP256);
        const Real b(u(rng), kP256);
        EXPECT_EQ(rel_diff(a, b), rel_diff(b, a));
        EXPECT_TRUE(rel_diff(a, a).is_zero());
    }
}
