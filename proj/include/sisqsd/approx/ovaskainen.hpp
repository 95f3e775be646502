#pragma once

// Ovaskainen's asymptotic QSD approximation and its successive modifications.
//
//   F_i   = (1 - c) exp(-N/R0) (1 - c^i),          c = N / ((N-1) R0)
//   OVb_i = N / (i (N-i)!) (N/R0)^(N-i),           i < N
//   OVb_N = 1 - N^2 / ((N-1) R0)
//   OV1_i = F_i OVb_i                               (negative at i = N when R0 < N^2/(N-1))
//   OV2_i = F_i N / (i (N-i)!) (N/R0)^(N-i)        (bulk formula extended to i = N)
//   OV3   = OV2 / sum(OV2)
//
// OV2 is proportional to pi_i (1 - c^i); OV3 therefore equals the normalized
// form of that product.

#include <vector>

#include "sisqsd/approx/auxiliary.hpp"
#include "sisqsd/approx/weights.hpp"
#include "sisqsd/distribution.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"

namespace sisqsd {

namespace detail {

inline void require_pair(long population, const char* what) {
    if (population < 2) {
        throw InvalidParameter(std::string(what) + " needs N >= 2");
    }
}

/// c = N / ((N-1) R0)
inline Real ovaskainen_ratio(long population, const Real& r0, const PrecisionContext& ctx) {
    Real c = ctx.real(population);
    c /= Real(r0, ctx.precision()) * (population - 1);
    return c;
}

/// N / (i (N-i)!) (N/R0)^(N-i)
inline Real ovaskainen_bulk(long population, const Real& r0, long i, const PrecisionContext& ctx) {
    const Precision p = ctx.precision();
    Real v = pow(ctx.real(population) / Real(r0, p), population - i);
    v *= population;
    v /= factorial(static_cast<unsigned long>(population - i), p) * i;
    return v;
}

}  // namespace detail

inline Real f_factor(long population, const Real& r0, long i, const PrecisionContext& ctx) {
    detail::require_pair(population, "f_factor");
    const Real c = detail::ovaskainen_ratio(population, r0, ctx);
    Real f = 1 - c;
    f *= exp(ctx.real(-population) / Real(r0, ctx.precision()));
    f *= 1 - pow(c, i);
    return f;
}

inline WeightVector ovb_weights(const BirthDeathModel& model, const PrecisionContext& ctx) {
    const long n = model.population();
    detail::require_pair(n, "ovb_weights");
    std::vector<Real> w;
    w.reserve(static_cast<std::size_t>(n));
    for (long i = 1; i < n; ++i) {
        w.push_back(detail::ovaskainen_bulk(n, model.r0(), i, ctx));
    }
    Real top = ctx.real(n) * n;
    top /= Real(model.r0(), ctx.precision()) * (n - 1);
    w.push_back(1 - top);
    return {std::move(w), WeightKind::ovb};
}

/// Intended for R0 > 1; the last entry is negative unless R0 >= N^2/(N-1).
inline WeightVector ov1_weights(const BirthDeathModel& model, const PrecisionContext& ctx) {
    WeightVector w = ovb_weights(model, ctx);
    for (long i = 1; i <= model.population(); ++i) {
        w.weights[static_cast<std::size_t>(i - 1)] *= f_factor(model.population(), model.r0(), i, ctx);
    }
    w.kind = WeightKind::ov1;
    return w;
}

/// Strictly positive whenever R0 != N/(N-1); identically zero at R0 = N/(N-1).
inline WeightVector ov2_weights(const BirthDeathModel& model, const PrecisionContext& ctx) {
    const long n = model.population();
    detail::require_pair(n, "ov2_weights");
    std::vector<Real> w;
    w.reserve(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) {
        w.push_back(f_factor(n, model.r0(), i, ctx) * detail::ovaskainen_bulk(n, model.r0(), i, ctx));
    }
    return {std::move(w), WeightKind::ov2};
}

/// True when OV3 is used inside the regime it was derived for (R0 > 1).
inline bool ov3_regime_validated(const BirthDeathModel& model) { return model.r0() > 1; }

/// Throws InvalidRegime when the OV2 weights do not sum to a positive value.
inline Distribution ov3_distribution(const BirthDeathModel& model, const PrecisionContext& ctx) {
    const WeightVector w = ov2_weights(model, ctx);
    try {
        return Distribution::normalize(w.weights, ModelTag::of(model), ctx);
    } catch (const InvalidRegime&) {
        throw InvalidRegime("ov3: OV2 weights have non-positive sum at " + model.tag());
    } catch (const InvalidParameter&) {
        throw InvalidRegime("ov3: OV2 weights change sign at " + model.tag());
    }
}

}  // namespace sisqsd
