#pragma once

// Stationary distributions of the two auxiliary processes without absorption:
// I0 (death rate at state 1 set to zero) and I1 (every death rate shifted down
// one index). Their unnormalized weights are
//
//   pi_n  = (lambda_1 ... lambda_{n-1}) / (mu_2 ... mu_n),       pi_1 = 1
//   rho_n = (lambda_1 ... lambda_{n-1}) / (mu_1 ... mu_{n-1}),   rho_1 = 1
//
// which for the SIS rates reduce to
//
//   pi_n  = (1/n) (1/R0) N!/(N-n)! (R0/N)^n,   rho_n = n pi_n.

#include <vector>

#include "sisqsd/approx/weights.hpp"
#include "sisqsd/distribution.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"

namespace sisqsd {

namespace detail {

inline void require_sis(const BirthDeathModel& model, const char* what) {
    if (!model.is_sis()) {
        throw InvalidParameter(std::string(what) + " is defined for the SIS model (alpha = 0) only");
    }
}

/// Running products of the model's own rates; valid for any alpha.
/// shift = 0 gives pi (denominators mu_2..mu_n), shift = 1 gives rho
/// (denominators mu_1..mu_{n-1}).
inline std::vector<Real> product_weights(const BirthDeathModel& model, int shift, const PrecisionContext& ctx) {
    const long n_states = model.population();
    std::vector<Real> w;
    w.reserve(static_cast<std::size_t>(n_states));
    w.push_back(ctx.real(1));
    for (long n = 1; n < n_states; ++n) {
        Real next = w.back() * model.birth_rate(n, ctx);
        next /= model.death_rate(n + 1 - shift, ctx);
        w.push_back(std::move(next));
    }
    return w;
}

}  // namespace detail

inline WeightVector pi_weights(const BirthDeathModel& model, const PrecisionContext& ctx) {
    detail::require_sis(model, "pi_weights");
    return {detail::product_weights(model, 0, ctx), WeightKind::pi};
}

inline WeightVector rho_weights(const BirthDeathModel& model, const PrecisionContext& ctx) {
    detail::require_sis(model, "rho_weights");
    return {detail::product_weights(model, 1, ctx), WeightKind::rho};
}

/// (1/R0) N!/(N-n)! (R0/N)^n, evaluated through factorials and a power.
inline Real rho_closed_form(const BirthDeathModel& model, long n, const PrecisionContext& ctx) {
    detail::require_sis(model, "rho_closed_form");
    const long big_n = model.population();
    if (n < 1 || n > big_n) {
        throw InvalidParameter("state index out of range");
    }
    const Precision p = ctx.precision();
    const Real r0(model.r0(), p);
    Real v = factorial(static_cast<unsigned long>(big_n), p) /
             factorial(static_cast<unsigned long>(big_n - n), p);
    v *= pow(r0 / big_n, n);
    v /= r0;
    return v;
}

inline Real pi_closed_form(const BirthDeathModel& model, long n, const PrecisionContext& ctx) {
    return rho_closed_form(model, n, ctx) / n;
}

/// Stationary distribution of the I0 process.
inline Distribution p0_distribution(const BirthDeathModel& model, const PrecisionContext& ctx) {
    const WeightVector w = pi_weights(model, ctx);
    return Distribution::normalize(w.weights, ModelTag::of(model), ctx);
}

/// Stationary distribution of the I1 process.
inline Distribution p1_distribution(const BirthDeathModel& model, const PrecisionContext& ctx) {
    const WeightVector w = rho_weights(model, ctx);
    return Distribution::normalize(w.weights, ModelTag::of(model), ctx);
}

}  // namespace sisqsd
