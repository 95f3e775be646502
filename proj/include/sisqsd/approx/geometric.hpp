#pragma once

// Geometric approximations of the QSD below threshold.
//
// G1 uses the first cumulant from a cumulant-closure argument,
//   kappa1 = (A + sqrt(A^2 + 8N/R0)) / 4,   A = 1 - N (1 - R0)/R0,
// and G2 its large-N limit kappa1 = 1/(1 - R0).

#include <string_view>
#include <vector>

#include "sisqsd/distribution.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"

namespace sisqsd {

enum class GeometricVariant { g1, g2 };

constexpr std::string_view to_string(GeometricVariant v) { return v == GeometricVariant::g1 ? "g1" : "g2"; }

struct GeometricParams {
    Real kappa1;
    Real a;
    GeometricVariant variant;
};

inline GeometricParams geometric_params(const BirthDeathModel& model, GeometricVariant variant,
                                        const PrecisionContext& ctx) {
    const long n = model.population();
    const Real r0(model.r0(), ctx.precision());

    Real a = ctx.real(n) * (1 - r0);
    a /= r0;
    a = 1 - a;

    if (variant == GeometricVariant::g2) {
        if (!(r0 < 1)) {
            throw InvalidRegime("g2 needs R0 < 1");
        }
        return {1 / (1 - r0), std::move(a), variant};
    }

    Real disc = a * a;
    disc += ctx.real(8 * n) / r0;
    Real kappa = (a + sqrt(disc)) / 4;
    if (kappa < 1) {
        throw InvalidRegime("g1: first cumulant below 1 at " + model.tag());
    }
    return {std::move(kappa), std::move(a), variant};
}

/// Masses p (1-p)^(i-1), p = 1/kappa1, on i = 1..N without renormalization.
/// The omitted tail mass (1-p)^N is recorded as the distribution's tail bound.
inline Distribution geometric_distribution(const GeometricParams& params, const ModelTag& tag, long population,
                                           const PrecisionContext& ctx) {
    if (population < 1) {
        throw InvalidParameter("geometric_distribution needs N >= 1");
    }
    if (params.kappa1 < 1) {
        throw InvalidRegime("geometric_distribution needs kappa1 >= 1");
    }
    const Real success = 1 / Real(params.kappa1, ctx.precision());
    const Real fail = 1 - success;
    std::vector<Real> probs;
    probs.reserve(static_cast<std::size_t>(population));
    Real mass = success;
    for (long i = 1; i <= population; ++i) {
        probs.push_back(mass);
        mass *= fail;
    }
    return {std::move(probs), tag, pow(fail, population)};
}

inline Distribution geometric_distribution(const BirthDeathModel& model, GeometricVariant variant,
                                           const PrecisionContext& ctx) {
    return geometric_distribution(geometric_params(model, variant, ctx), ModelTag::of(model),
                                  model.population(), ctx);
}

}  // namespace sisqsd
