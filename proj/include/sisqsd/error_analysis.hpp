#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sisqsd/distribution.hpp"
#include "sisqsd/errors.hpp"
#include "sisqsd/numerics/real.hpp"
#include "sisqsd/numerics/summation.hpp"

namespace sisqsd {

namespace detail {

inline Precision widest(std::span<const Real> a, std::span<const Real> b) {
    Precision p{64};
    for (const Real& x : a) {
        p = std::max(p, x.precision());
    }
    for (const Real& x : b) {
        p = std::max(p, x.precision());
    }
    return p;
}

inline void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) {
        throw LengthMismatch("error metrics need equal lengths, got " + std::to_string(a) + " and " +
                             std::to_string(b));
    }
}

}  // namespace detail

/// max_i |qhat_i - q_i|
inline Real err1(std::span<const Real> qhat, std::span<const Real> q) {
    detail::require_same_length(qhat.size(), q.size());
    Real worst(0L, detail::widest(qhat, q));
    for (std::size_t i = 0; i < q.size(); ++i) {
        worst = max(worst, abs(qhat[i] - q[i]));
    }
    return worst;
}

/// 0.5 sum_i |qhat_i - q_i|
inline Real err2(std::span<const Real> qhat, std::span<const Real> q) {
    detail::require_same_length(qhat.size(), q.size());
    std::vector<Real> diffs;
    diffs.reserve(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        diffs.push_back(abs(qhat[i] - q[i]));
    }
    return stable_sum(diffs, detail::widest(qhat, q)) / 2;
}

inline Real err1(const Distribution& qhat, const Distribution& q) { return err1(qhat.probs(), q.probs()); }
inline Real err2(const Distribution& qhat, const Distribution& q) { return err2(qhat.probs(), q.probs()); }

/// One approximation evaluated at one (R0, N) cell.
struct ErrorReport {
    std::string approx_name;
    long n = 0;
    double r0 = 0.0;
    Real err1;
    Real err2;
    long precision_bits = 0;
    /// Set when the cell could not be evaluated; err1/err2 are NaN then.
    std::string failure;

    [[nodiscard]] bool ok() const { return failure.empty(); }

    /// err1 <= 2 err2, err2 <= (N/2) err1 and err2 <= 1, with slack `tol`
    /// for rounding.
    [[nodiscard]] bool satisfies_invariants(const Real& tol) const {
        if (!ok()) {
            return true;
        }
        if (err1 < 0 || err2 < 0) {
            return false;
        }
        const bool pointwise_vs_l1 = err1 <= err2 * 2 + tol;
        const bool l1_vs_pointwise = err2 <= err1 * n / 2 + tol;
        return pointwise_vs_l1 && l1_vs_pointwise && err2 <= 1 + tol;
    }
};

enum class ScalingOrder { polynomial_1_over_n, exponentially_small, constant, inconclusive };

constexpr std::string_view to_string(ScalingOrder o) {
    switch (o) {
        case ScalingOrder::polynomial_1_over_n: return "polynomial_1_over_N";
        case ScalingOrder::exponentially_small: return "exponentially_small";
        case ScalingOrder::constant: return "constant";
        case ScalingOrder::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Ratio bands used by classify_scaling.
struct ScalingBands {
    double halving_low = 1.0 / 3.0;
    double halving_high = 2.0 / 3.0;
    double constant_low = 2.0 / 3.0;
    double constant_high = 1.5;
    double squaring_low = 1.5;
    double squaring_high = 2.4;
};

struct ScalingVerdict {
    std::string approx_name;
    double r0 = 0.0;
    std::vector<long> sampled_n;
    std::vector<Real> errors;
    /// e(2N)/e(N) for each consecutive pair.
    std::vector<double> ratios;
    /// log e(2N) / log e(N) for each consecutive pair (NaN when e(N) >= 1).
    std::vector<double> log_ratios;
    ScalingOrder verdict = ScalingOrder::inconclusive;
};

/// Classifies how an error sequence at N, 2N, 4N, ... decays.
///
///   polynomial_1_over_N  every e(2N)/e(N) in [1/3, 2/3]
///   constant             every e(2N)/e(N) in [2/3, 3/2]
///   exponentially_small  every e(N) < 1 and log e(2N)/log e(N) in [1.5, 2.4]
///
/// checked in that order; anything else is inconclusive.
inline ScalingVerdict classify_scaling(std::string approx_name, double r0, std::vector<long> sampled_n,
                                       std::vector<Real> errors, const ScalingBands& bands = {}) {
    if (sampled_n.size() != errors.size()) {
        throw LengthMismatch("classify_scaling: one error per sampled N is required");
    }
    if (errors.size() < 3) {
        throw InvalidParameter("classify_scaling needs at least three doublings");
    }
    if (sampled_n.front() < 1) {
        throw InvalidParameter("classify_scaling: sampled N must be positive");
    }
    for (std::size_t j = 1; j < sampled_n.size(); ++j) {
        if (sampled_n[j] != 2 * sampled_n[j - 1]) {
            throw InvalidParameter("classify_scaling: N values must double at each step");
        }
    }
    for (const Real& e : errors) {
        if (!e.is_finite() || !(e > 0)) {
            throw InvalidParameter("classify_scaling: errors must be finite and positive");
        }
    }

    ScalingVerdict out;
    out.approx_name = std::move(approx_name);
    out.r0 = r0;

    bool halving = true;
    bool flat = true;
    bool squaring = true;
    for (std::size_t j = 1; j < errors.size(); ++j) {
        // Ratios of logs stay finite in double even when the errors do not.
        const double ratio = (errors[j] / errors[j - 1]).to_double();
        const bool below_one = errors[j - 1] < 1;
        const double log_ratio = below_one ? (log(errors[j]) / log(errors[j - 1])).to_double() : std::nan("");
        out.ratios.push_back(ratio);
        out.log_ratios.push_back(log_ratio);

        halving = halving && ratio >= bands.halving_low && ratio <= bands.halving_high;
        flat = flat && ratio >= bands.constant_low && ratio <= bands.constant_high;
        squaring = squaring && below_one && log_ratio >= bands.squaring_low && log_ratio <= bands.squaring_high;
    }

    if (halving) {
        out.verdict = ScalingOrder::polynomial_1_over_n;
    } else if (flat) {
        out.verdict = ScalingOrder::constant;
    } else if (squaring) {
        out.verdict = ScalingOrder::exponentially_small;
    }
    out.sampled_n = std::move(sampled_n);
    out.errors = std::move(errors);
    return out;
}

}  // namespace sisqsd
