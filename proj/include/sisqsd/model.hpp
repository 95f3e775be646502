#pragma once

#include <mpfr.h>

#include <string>

#include "sisqsd/errors.hpp"
#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/numerics/real.hpp"

namespace sisqsd {

/// Logistic (Verhulst) birth-death chain on {0, ..., N} with absorbing origin.
///
///   birth_rate(n) = mu * R0 * (1 - n/N) * n
///   death_rate(n) = mu * (1 + alpha * n/N) * n
///
/// alpha = 0 is the SIS model. Parameters are kept at the precision they were
/// supplied in; rates are evaluated on demand at the caller's precision.
class BirthDeathModel {
public:
    BirthDeathModel(long population, Real r0, Real mu, Real alpha)
        : n_(population), r0_(std::move(r0)), mu_(std::move(mu)), alpha_(std::move(alpha)) {
        if (n_ < 1) {
            throw InvalidParameter("population size N must be at least 1");
        }
        if (!r0_.is_finite() || !(r0_ > 0)) {
            throw InvalidParameter("R0 must be a finite positive number");
        }
        if (!mu_.is_finite() || !(mu_ > 0)) {
            throw InvalidParameter("mu must be a finite positive number");
        }
        if (!alpha_.is_finite() || alpha_ < 0) {
            throw InvalidParameter("alpha must be a finite non-negative number");
        }
    }

    [[nodiscard]] long population() const { return n_; }
    [[nodiscard]] const Real& r0() const { return r0_; }
    [[nodiscard]] const Real& mu() const { return mu_; }
    [[nodiscard]] const Real& alpha() const { return alpha_; }
    [[nodiscard]] bool is_sis() const { return alpha_.is_zero(); }

    /// Zero outside 1..N-1.
    [[nodiscard]] Real birth_rate(long n, const PrecisionContext& ctx) const {
        if (n <= 0 || n >= n_) {
            return ctx.real(0);
        }
        Real r = at(mu_, ctx) * at(r0_, ctx);
        r *= n_ - n;
        r *= n;
        r /= n_;
        return r;
    }

    /// Zero outside 1..N.
    [[nodiscard]] Real death_rate(long n, const PrecisionContext& ctx) const {
        if (n <= 0 || n > n_) {
            return ctx.real(0);
        }
        Real crowding = at(alpha_, ctx) * n;
        crowding /= n_;
        crowding += 1;
        Real r = at(mu_, ctx) * crowding;
        r *= n;
        return r;
    }

    /// Short human-readable tag, e.g. "N=25 R0=2 alpha=0".
    [[nodiscard]] std::string tag() const {
        return "N=" + std::to_string(n_) + " R0=" + short_text(r0_) + " alpha=" + short_text(alpha_);
    }

private:
    static Real at(const Real& v, const PrecisionContext& ctx) { return Real(v, ctx.precision()); }

    static std::string short_text(const Real& v) {
        char* buf = nullptr;
        const int len = mpfr_asprintf(&buf, "%.10Rg", v.raw());
        std::string s = len >= 0 ? std::string(buf, static_cast<std::size_t>(len)) : "?";
        if (buf != nullptr) {
            mpfr_free_str(buf);
        }
        return s;
    }

    long n_;
    Real r0_;
    Real mu_;
    Real alpha_;
};

inline BirthDeathModel sis_model(long population, Real r0, Real mu) {
    const Precision p = mu.precision();
    return {population, std::move(r0), std::move(mu), Real(0L, p)};
}

inline BirthDeathModel sis_model(long population, double r0, double mu = 1.0) {
    return sis_model(population, Real(r0, Precision{53}), Real(mu, Precision{53}));
}

inline BirthDeathModel verhulst_model(long population, Real r0, Real mu, Real alpha) {
    return {population, std::move(r0), std::move(mu), std::move(alpha)};
}

inline BirthDeathModel verhulst_model(long population, double r0, double mu, double alpha) {
    const Precision p{53};
    return {population, Real(r0, p), Real(mu, p), Real(alpha, p)};
}

/// R0 in Ovaskainen's parametrization: (N-1)/N * R0.
inline Real ovaskainen_r0(long population, const Real& r0, const PrecisionContext& ctx) {
    if (population < 2) {
        throw InvalidParameter("ovaskainen_r0 needs N >= 2");
    }
    Real r(r0, ctx.precision());
    r *= population - 1;
    r /= population;
    return r;
}

/// K(N, R0) = 2 (N-1)^2 R0^2 / (N [(N-1) R0 - N]^2).
///
/// Diagnostic only: values above 1 flag the small-N regime where Ovaskainen's
/// approximation needs an adjustment that this library does not apply.
inline Real k_function(long population, const Real& r0, const PrecisionContext& ctx) {
    if (population < 2) {
        throw InvalidParameter("k_function needs N >= 2");
    }
    const Real scaled = Real(r0, ctx.precision()) * (population - 1);
    const Real gap = scaled - population;
    if (gap.is_zero()) {
        throw SingularParameter("k_function: (N-1) R0 = N is a pole");
    }
    Real k = scaled * scaled * 2;
    k /= gap * gap * population;
    return k;
}

}  // namespace sisqsd
