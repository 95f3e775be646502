#pragma once

#include <limits>
#include <ranges>
#include <span>
#include <vector>

#include "sisqsd/errors.hpp"
#include "sisqsd/numerics/real.hpp"

namespace sisqsd {

/// Correctly rounded sum of `values` at precision `prec` (mpfr_sum).
///
/// Throws PrecisionConfigError if an input is non-finite or the result
/// overflows the exponent range.
inline Real stable_sum(std::span<const Real> values, Precision prec) {
    Real result(0L, prec);
    if (values.empty()) {
        return result;
    }
    std::vector<mpfr_ptr> ptrs;
    ptrs.reserve(values.size());
    for (const Real& v : values) {
        if (!v.is_finite()) {
            throw PrecisionConfigError("stable_sum: non-finite summand");
        }
        // mpfr_sum takes non-const pointers but does not modify its inputs.
        ptrs.push_back(const_cast<mpfr_ptr>(v.raw()));
    }
    mpfr_sum(result.raw(), ptrs.data(), static_cast<unsigned long>(ptrs.size()), MPFR_RNDN);
    if (!result.is_finite()) {
        throw PrecisionConfigError("stable_sum: exponent range overflow");
    }
    return result;
}

/// Sum at the widest precision found among the inputs (64 bits when empty).
inline Real stable_sum(std::span<const Real> values) {
    Precision prec{64};
    for (const Real& v : values) {
        prec = std::max(prec, v.precision());
    }
    return stable_sum(values, prec);
}

/// |a - b| / max(|a|, |b|, smallest normal double).
inline Real rel_diff(const Real& a, const Real& b) {
    const Precision prec = std::max(a.precision(), b.precision());
    Real scale = max(abs(a), abs(b));
    const Real floor(std::numeric_limits<double>::min(), prec);
    if (scale < floor) {
        scale = floor;
    }
    Real diff = abs(a - b);
    return Real(diff / scale, prec);
}

}  // namespace sisqsd
