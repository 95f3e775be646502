#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sisqsd/errors.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/numerics/summation.hpp"

namespace sisqsd {

/// Parameters a distribution was computed for.
struct ModelTag {
    long population = 0;
    double r0 = 0.0;
    double alpha = 0.0;

    static ModelTag of(const BirthDeathModel& m) {
        return {m.population(), m.r0().to_double(), m.alpha().to_double()};
    }
};

/// Probability vector on the transient states {1, ..., N}.
///
/// Entries are non-negative. A distribution is either normalized, or a
/// truncation of a distribution with unbounded support, in which case
/// tail_bound() bounds the mass missing beyond N.
class Distribution {
public:
    Distribution(std::vector<Real> probs, ModelTag tag, Real tail_bound)
        : probs_(std::move(probs)), tag_(tag), tail_bound_(std::move(tail_bound)) {
        if (probs_.empty()) {
            throw InvalidParameter("a distribution needs at least one state");
        }
        for (const Real& p : probs_) {
            if (!p.is_finite() || p < 0) {
                throw InvalidParameter("distribution entries must be finite and non-negative");
            }
        }
    }

    Distribution(std::vector<Real> probs, ModelTag tag)
        : Distribution(std::move(probs), tag, Real(0L, Precision{64})) {}

    /// weights / sum(weights). Throws InvalidRegime if the sum is not positive.
    static Distribution normalize(std::span<const Real> weights, ModelTag tag, const PrecisionContext& ctx) {
        const Real total = stable_sum(weights, ctx.precision());
        if (!(total > 0)) {
            throw InvalidRegime("cannot normalize weights with non-positive sum");
        }
        std::vector<Real> probs;
        probs.reserve(weights.size());
        for (const Real& w : weights) {
            probs.push_back(Real(w, ctx.precision()) / total);
        }
        return {std::move(probs), tag};
    }

    static Distribution point_mass(long population, ModelTag tag, const PrecisionContext& ctx) {
        std::vector<Real> probs(static_cast<std::size_t>(population), ctx.real(0));
        probs.front() = ctx.real(1);
        return {std::move(probs), tag};
    }

    [[nodiscard]] std::size_t size() const { return probs_.size(); }
    [[nodiscard]] std::span<const Real> probs() const { return probs_; }
    /// Mass at state n, 1-based.
    [[nodiscard]] const Real& at_state(long n) const { return probs_.at(static_cast<std::size_t>(n - 1)); }
    [[nodiscard]] const ModelTag& tag() const { return tag_; }
    [[nodiscard]] const Real& tail_bound() const { return tail_bound_; }
    [[nodiscard]] bool is_truncated() const { return !tail_bound_.is_zero(); }

    [[nodiscard]] Real total_mass() const { return stable_sum(probs_); }

    /// |sum - 1| <= tol, or <= tail_bound + tol for a truncated distribution.
    [[nodiscard]] bool is_normalized(const Real& tol) const {
        return abs(total_mass() - 1) <= tail_bound_ + tol;
    }

    /// Mean of the state index n.
    [[nodiscard]] Real mean() const {
        std::vector<Real> terms;
        terms.reserve(probs_.size());
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            terms.push_back(probs_[i] * static_cast<long>(i + 1));
        }
        return stable_sum(terms);
    }

    /// Central second moment of the state index n.
    [[nodiscard]] Real variance() const {
        const Real m = mean();
        std::vector<Real> terms;
        terms.reserve(probs_.size());
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            Real d = static_cast<long>(i + 1) - m;
            terms.push_back(probs_[i] * d * d);
        }
        return stable_sum(terms);
    }

private:
    std::vector<Real> probs_;
    ModelTag tag_;
    Real tail_bound_;
};

}  // namespace sisqsd
