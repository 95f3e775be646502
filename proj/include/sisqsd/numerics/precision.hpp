#pragma once

#include <algorithm>
#include <cmath>

#include "sisqsd/errors.hpp"
#include "sisqsd/numerics/real.hpp"

namespace sisqsd {

/// Working-precision contract threaded through every numeric computation.
///
/// Immutable once constructed. Tolerances are stored at the working precision
/// so that values far below the double range (e.g. 2^-2000) stay representable.
class PrecisionContext {
public:
    static constexpr mpfr_prec_t kMinBits = 64;

    /// Throws PrecisionConfigError unless
    ///   bits >= 64, 0 < fixed_point_tol < 1, 0 < equality_tol < 1,
    ///   fixed_point_tol >= 2^(8 - bits).
    PrecisionContext(mpfr_prec_t significand_bits, Real fixed_point_tol, Real equality_tol)
        : bits_(significand_bits),
          fixed_point_tol_(std::move(fixed_point_tol), Precision{significand_bits}),
          equality_tol_(std::move(equality_tol), Precision{significand_bits}) {
        if (bits_ < kMinBits) {
            throw PrecisionConfigError("significand_bits must be at least 64");
        }
        if (!(fixed_point_tol_ > 0) || !(fixed_point_tol_ < 1)) {
            throw PrecisionConfigError("fixed_point_tol must lie in (0, 1)");
        }
        if (!(equality_tol_ > 0) || !(equality_tol_ < 1)) {
            throw PrecisionConfigError("equality_tol must lie in (0, 1)");
        }
        if (fixed_point_tol_ < exp2i(8 - bits_, precision())) {
            throw PrecisionConfigError("fixed_point_tol is below 2^(8 - significand_bits)");
        }
    }

    /// Context with fixed_point_tol = 2^(-bits/2) and equality_tol = 2^(4 - bits/2).
    static PrecisionContext with_bits(mpfr_prec_t significand_bits) {
        if (significand_bits < kMinBits) {
            throw PrecisionConfigError("significand_bits must be at least 64");
        }
        const Precision p{significand_bits};
        return {significand_bits, exp2i(-(significand_bits / 2), p),
                exp2i(4 - significand_bits / 2, p)};
    }

    [[nodiscard]] mpfr_prec_t significand_bits() const { return bits_; }
    [[nodiscard]] Precision precision() const { return {bits_}; }
    [[nodiscard]] const Real& fixed_point_tol() const { return fixed_point_tol_; }
    [[nodiscard]] const Real& equality_tol() const { return equality_tol_; }

    /// Shorthand for a constant at the working precision.
    template <typename A>
        requires std::is_arithmetic_v<A>
    [[nodiscard]] Real real(A value) const {
        return Real(value, precision());
    }

private:
    mpfr_prec_t bits_;
    Real fixed_point_tol_;
    Real equality_tol_;
};

/// Bits needed for an (N, R0) cell: max(256, ceil(3.5 N log2 max(R0, 1/R0, 2))).
///
/// The QSD tail spans roughly N log2(R0) binary orders of magnitude in either
/// direction; the factor 3.5 leaves room to resolve errors far below the
/// smallest probabilities while fixed_point_tol = 2^(-bits/2).
inline mpfr_prec_t default_bits(long n, double r0) {
    const double spread = std::max({r0, 1.0 / r0, 2.0});
    const double needed = std::ceil(3.5 * static_cast<double>(n) * std::log2(spread));
    return std::max<mpfr_prec_t>(256, static_cast<mpfr_prec_t>(needed));
}

inline PrecisionContext default_context(long n, double r0) {
    if (n < 1 || !(r0 > 0) || !std::isfinite(r0)) {
        throw InvalidParameter("default_context needs N >= 1 and finite R0 > 0");
    }
    return PrecisionContext::with_bits(default_bits(n, r0));
}

}  // namespace sisqsd
