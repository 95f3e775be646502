#pragma once

// Beta-binomial approximation of the QSD.
//
// The QSD lives on {1..N}; the fit is a beta-binomial on {0..N-1} (N-1 trials)
// shifted up by one, with shape parameters chosen so that mean and variance
// match those of the exact QSD.

#include <vector>

#include "sisqsd/distribution.hpp"
#include "sisqsd/numerics/precision.hpp"

namespace sisqsd {

struct BetaBinomialParams {
    long trials;
    Real a;
    Real b;
};

/// Probabilities of 0..trials, by the ratio recurrence
///   P(0)   = prod_{j<n} (b + j) / (a + b + j)
///   P(k+1) = P(k) (n - k)/(k + 1) (k + a)/(n - k - 1 + b)
inline std::vector<Real> beta_binomial_pmf(const BetaBinomialParams& params, const PrecisionContext& ctx) {
    if (params.trials < 0 || !(params.a > 0) || !(params.b > 0)) {
        throw InvalidParameter("beta-binomial needs trials >= 0 and positive shapes");
    }
    const long n = params.trials;
    const Real a(params.a, ctx.precision());
    const Real b(params.b, ctx.precision());
    const Real ab = a + b;

    std::vector<Real> pmf;
    pmf.reserve(static_cast<std::size_t>(n + 1));
    Real p0 = ctx.real(1);
    for (long j = 0; j < n; ++j) {
        p0 *= (b + j) / (ab + j);
    }
    pmf.push_back(std::move(p0));
    for (long k = 0; k < n; ++k) {
        Real next = pmf.back() * (n - k);
        next *= a + k;
        next /= (b + (n - k - 1)) * (k + 1);
        pmf.push_back(std::move(next));
    }
    return pmf;
}

/// Method of moments for a beta-binomial with `trials` trials:
///   p = m/n,  r = v / (n p (1-p)),  a + b = (n - r)/(r - 1),
/// admissible only for over-dispersed targets 1 < r < n.
inline BetaBinomialParams fit_beta_binomial_moments(const Real& mean, const Real& variance, long trials,
                                                    const PrecisionContext& ctx) {
    if (trials < 1) {
        throw FitFailure("beta-binomial fit needs at least one trial");
    }
    const Real m(mean, ctx.precision());
    const Real v(variance, ctx.precision());
    const Real p = m / trials;
    if (!(p > 0) || !(p < 1)) {
        throw FitFailure("beta-binomial fit: mean outside (0, trials)");
    }
    const Real binomial_var = p * (1 - p) * trials;
    const Real ratio = v / binomial_var;
    if (!(ratio > 1) || !(ratio < trials)) {
        throw FitFailure("beta-binomial fit: variance ratio " + ratio.to_scientific(6) +
                         " outside (1, trials); no positive shape parameters");
    }
    const Real shape_sum = (trials - ratio) / (ratio - 1);
    return {trials, p * shape_sum, (1 - p) * shape_sum};
}

inline BetaBinomialParams fit_beta_binomial(const Distribution& target, const PrecisionContext& ctx) {
    const long n = static_cast<long>(target.size());
    if (n < 2) {
        throw FitFailure("beta-binomial fit needs N >= 2");
    }
    // Shifting the support by one changes the mean but not the variance.
    return fit_beta_binomial_moments(target.mean() - 1, target.variance(), n - 1, ctx);
}

/// Moment-matched beta-binomial on {1..N}.
inline Distribution beta_binomial_fit(const Distribution& q_exact, const PrecisionContext& ctx) {
    const BetaBinomialParams params = fit_beta_binomial(q_exact, ctx);
    return {beta_binomial_pmf(params, ctx), q_exact.tag()};
}

}  // namespace sisqsd
