#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "sisqsd/approx.hpp"
#include "sisqsd/error_analysis.hpp"
#include "sisqsd/qsd.hpp"

using namespace sisqsd;

namespace {

/// Left Perron vector of the restricted generator by a dense eigensolver in
/// double precision.
std::vector<double> eigen_qsd(long n, double r0, double mu, double alpha) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (long s = 1; s <= n; ++s) {
        const double birth = (s < n) ? mu * r0 * (1.0 - static_cast<double>(s) / n) * s : 0.0;
        const double death = mu * (1.0 + alpha * s / n) * s;
        q(s - 1, s - 1) = -(birth + death);
        if (s < n) {
            q(s - 1, s) = birth;
        }
        if (s > 1) {
            q(s - 1, s - 2) = death;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(q.transpose());
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) {
            best = i;
        }
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    v /= v.sum();
    return {v.data(), v.data() + v.size()};
}

void expect_componentwise_close(const Distribution& a, const Distribution& b, const Real& tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(rel_diff(a.probs()[i], b.probs()[i]) < tol)
            << "state " << i + 1 << ": " << rel_diff(a.probs()[i], b.probs()[i]).to_scientific(3);
    }
}

}  // namespace

TEST(SolveQsd, SingleStateIsPointMass) {
    const PrecisionContext ctx = default_context(1, 3.0);
    for (const BirthDeathModel& m : {sis_model(1, 3.0), sis_model(1, 0.2, 5.0)}) {
        EXPECT_EQ(solve_qsd(m, ctx).at_state(1), 1);
        EXPECT_EQ(qsd_power_oracle(m, ctx).at_state(1), 1);
    }
    EXPECT_EQ(decay_rate(solve_qsd(sis_model(1, 3.0), ctx), sis_model(1, 3.0), ctx), 1);
}

TEST(SolveQsd, TwoStateQuadraticRoot) {
    // q1^2 - 4 q1 + 2 = 0 on the admissible branch
    const PrecisionContext ctx = default_context(2, 2.0);
    const BirthDeathModel m = sis_model(2, 2.0);
    const Real root2 = sqrt(ctx.real(2));
    for (const Distribution& q : {solve_qsd(m, ctx), qsd_power_oracle(m, ctx)}) {
        EXPECT_TRUE(abs(q.at_state(1) - (2 - root2)) <= ctx.fixed_point_tol());
        EXPECT_TRUE(abs(q.at_state(2) - (root2 - 1)) <= ctx.fixed_point_tol());
    }
    EXPECT_NEAR(solve_qsd(m, ctx).at_state(1).to_double(), 0.585786, 1e-6);
    EXPECT_TRUE(abs(decay_rate(solve_qsd(m, ctx), m, ctx) - (2 - root2)) <= ctx.fixed_point_tol());
}

TEST(SolveQsd, AgreesWithPowerOracle) {
    const PrecisionContext ctx = default_context(50, 2.0);
    const BirthDeathModel m = sis_model(50, 2.0);
    expect_componentwise_close(solve_qsd(m, ctx), qsd_power_oracle(m, ctx), ctx.fixed_point_tol() * 10);
}

TEST(SolveQsd, AgreesWithDenseEigensolver) {
    for (long n : {3L, 5L, 10L, 20L}) {
        for (double r0 : {0.5, 1.0, 2.0, 5.0}) {
            const PrecisionContext ctx = default_context(n, r0);
            const Distribution q = solve_qsd(sis_model(n, r0), ctx);
            const std::vector<double> ref = eigen_qsd(n, r0, 1.0, 0.0);
            for (long i = 1; i <= n; ++i) {
                EXPECT_NEAR(q.at_state(i).to_double(), ref[static_cast<std::size_t>(i - 1)], 1e-10)
                    << "N=" << n << " R0=" << r0 << " i=" << i;
            }
        }
    }
}

TEST(SolveQsd, VerhulstModel) {
    const PrecisionContext ctx = default_context(20, 3.0);
    const BirthDeathModel m = verhulst_model(20, 3.0, 1.0, 0.5);
    const Distribution q = solve_qsd(m, ctx);
    expect_componentwise_close(q, qsd_power_oracle(m, ctx), ctx.fixed_point_tol() * 10);
    const std::vector<double> ref = eigen_qsd(20, 3.0, 1.0, 0.5);
    for (long i = 1; i <= 20; ++i) {
        EXPECT_NEAR(q.at_state(i).to_double(), ref[static_cast<std::size_t>(i - 1)], 1e-10);
    }
}

TEST(SolveQsd, IndependentOfMu) {
    for (double r0 : {0.5, 2.0, 10.0}) {
        const PrecisionContext ctx = default_context(30, r0);
        const Distribution q1 = solve_qsd(sis_model(30, r0, 1.0), ctx);
        const Distribution q7 = solve_qsd(sis_model(30, r0, 7.0), ctx);
        expect_componentwise_close(q1, q7, ctx.fixed_point_tol());
    }
}

TEST(SolveQsd, DecayRateScalesWithMu) {
    const PrecisionContext ctx = default_context(25, 2.0);
    const BirthDeathModel slow = sis_model(25, 2.0, 1.0);
    const BirthDeathModel fast = sis_model(25, 2.0, 2.0);
    const Real d1 = decay_rate(solve_qsd(slow, ctx), slow, ctx);
    const Real d2 = decay_rate(solve_qsd(fast, ctx), fast, ctx);
    EXPECT_TRUE(rel_diff(d2, d1 * 2) < ctx.fixed_point_tol() * 4);
}

TEST(SolveQsd, BalanceResidualsAndPositivity) {
    for (long n : {2L, 7L, 30L, 100L}) {
        for (double r0 : {0.1, 1.0, 2.0, 10.0}) {
            const PrecisionContext ctx = default_context(n, r0);
            const BirthDeathModel m = sis_model(n, r0);
            const Distribution q = solve_qsd(m, ctx);
            Real max_rate = ctx.real(0);
            for (long s = 1; s <= n; ++s) {
                max_rate = max(max_rate, m.birth_rate(s, ctx) + m.death_rate(s, ctx));
            }
            for (const Real& r : balance_residuals(q, m, ctx)) {
                EXPECT_TRUE(abs(r) < ctx.fixed_point_tol() * max_rate) << "N=" << n << " R0=" << r0;
            }
            for (const Real& p : q.probs()) {
                EXPECT_TRUE(p > 0);
            }
            EXPECT_TRUE(q.is_normalized(ctx.equality_tol()));
        }
    }
}

TEST(SolveQsd, UniformStartConverges) {
    for (double r0 : {0.2, 1.0, 5.0}) {
        const PrecisionContext ctx = default_context(40, r0);
        const BirthDeathModel m = sis_model(40, r0);
        SolverStats stats;
        const Distribution from_uniform = solve_qsd(m, ctx, {.start = QsdStart::uniform}, &stats);
        EXPECT_GT(stats.iterations, 1);
        expect_componentwise_close(from_uniform, solve_qsd(m, ctx), ctx.fixed_point_tol() * 10);
    }
}

TEST(SolveQsd, IterationCapRaisesSolverFailure) {
    const PrecisionContext ctx = default_context(30, 0.5);
    try {
        (void)solve_qsd(sis_model(30, 0.5), ctx, {.max_iterations = 2});
        FAIL() << "expected SolverFailure";
    } catch (const SolverFailure& e) {
        EXPECT_EQ(e.iterations(), 2);
        EXPECT_GT(e.last_change(), 0.0);
    }
    EXPECT_THROW((void)qsd_power_oracle(sis_model(30, 0.5), ctx, {.max_iterations = 2}), SolverFailure);
}

TEST(SolveQsd, TableOneSpotValues) {
    // Err1 of p0 at (R0=5, N=25) is 2.7e-9 and at (R0=2, N=100) 8.1e-9.
    for (const auto& [n, r0, expected] : {std::tuple{25L, 5.0, 2.7e-9}, std::tuple{100L, 2.0, 8.1e-9}}) {
        const PrecisionContext ctx = default_context(n, r0);
        const BirthDeathModel m = sis_model(n, r0);
        const double e = err1(p0_distribution(m, ctx), solve_qsd(m, ctx)).to_double();
        EXPECT_NEAR(e / expected, 1.0, 0.1) << e;
    }
}

TEST(BalanceResiduals, LengthMismatch) {
    const PrecisionContext ctx = default_context(5, 2.0);
    EXPECT_THROW(balance_residuals(Distribution::point_mass(3, {}, ctx), sis_model(5, 2.0), ctx), LengthMismatch);
}
