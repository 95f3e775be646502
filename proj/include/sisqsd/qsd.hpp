#pragma once

// Exact quasi-stationary distribution of a finite birth-death chain with an
// absorbing origin, plus an independent oracle.
//
// The QSD q on {1..N} solves, with q_0 = q_{N+1} = 0,
//
//   lambda_{n-1} q_{n-1} - (lambda_n + mu_n) q_n + mu_{n+1} q_{n+1} + mu_1 q_1 q_n = 0.
//
// Summing the first m equations telescopes to
//
//   mu_{m+1} q_{m+1} = lambda_m q_m + mu_1 q_1 (1 - sum_{k<=m} q_k),
//
// which solve_qsd iterates to a fixed point. The oracle instead runs power
// iteration on the uniformized transition matrix restricted to {1..N}.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "sisqsd/approx/auxiliary.hpp"
#include "sisqsd/distribution.hpp"
#include "sisqsd/errors.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/numerics/summation.hpp"

namespace sisqsd {

enum class QsdStart {
    auxiliary,  ///< p0 above threshold, p1 at or below it
    uniform,
};

struct SolverOptions {
    long max_iterations = 1'000'000;
    QsdStart start = QsdStart::auxiliary;
};

struct SolverStats {
    long iterations = 0;
    /// Last componentwise relative update.
    double last_change = 0.0;
    /// Number of iterations where successive iterates were averaged.
    long damped_iterations = 0;
    /// Oracle only: how often the step matrix was squared.
    int squarings = 0;
};

namespace detail {

/// max_n |a_n - b_n| / |a_n| over the entries, with 0/0 treated as 0.
inline Real max_relative_change(std::span<const Real> next, std::span<const Real> prev, Precision prec) {
    Real worst(0L, prec);
    for (std::size_t i = 0; i < next.size(); ++i) {
        Real d = abs(next[i] - prev[i]);
        if (d.is_zero()) {
            continue;
        }
        d /= abs(next[i]);
        if (worst < d) {
            worst = std::move(d);
        }
    }
    return worst;
}

inline std::vector<Real> normalized(std::vector<Real> v, const PrecisionContext& ctx) {
    const Real total = stable_sum(v, ctx.precision());
    for (Real& x : v) {
        x /= total;
    }
    return v;
}

/// Stopping rule shared by both solvers: the last update is below tol, and the
/// geometric-series bound on the remaining error, change * r / (1 - r) with
/// r the observed contraction, is below tol as well.
inline bool converged(const Real& change, const std::optional<Real>& prev_change, const Real& tol) {
    if (change.is_zero()) {
        return true;
    }
    if (change > tol || !prev_change || prev_change->is_zero()) {
        return false;
    }
    const Real ratio = change / *prev_change;
    if (!(ratio < 1)) {
        return false;
    }
    return change * ratio / (1 - ratio) <= tol;
}

}  // namespace detail

/// Residuals of the quasi-stationarity balance equations at n = 1..N.
inline std::vector<Real> balance_residuals(const Distribution& q, const BirthDeathModel& model,
                                           const PrecisionContext& ctx) {
    const long n_states = model.population();
    if (static_cast<long>(q.size()) != n_states) {
        throw LengthMismatch("balance_residuals: distribution length differs from N");
    }
    const auto at = [&](long n) { return (n < 1 || n > n_states) ? ctx.real(0) : Real(q.at_state(n), ctx.precision()); };
    const Real flux = model.death_rate(1, ctx) * at(1);
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(n_states));
    for (long n = 1; n <= n_states; ++n) {
        Real r = model.birth_rate(n - 1, ctx) * at(n - 1);
        r -= (model.birth_rate(n, ctx) + model.death_rate(n, ctx)) * at(n);
        r += model.death_rate(n + 1, ctx) * at(n + 1);
        r += flux * at(n);
        out.push_back(std::move(r));
    }
    return out;
}

/// Absorption flux mu_1 q_1.
inline Real decay_rate(const Distribution& q, const BirthDeathModel& model, const PrecisionContext& ctx) {
    return model.death_rate(1, ctx) * q.at_state(1);
}

/// Fixed-point solver for the QSD.
///
/// Each sweep takes the tail sums of the current iterate, runs the telescoped
/// recursion forward from q_1 = 1 and renormalizes. Tail sums are accumulated
/// from the top state down, so every term of the recursion is non-negative and
/// tiny upper-tail probabilities keep full relative accuracy. Convergence is
/// judged componentwise in relative terms, which implies the max-norm
/// criterion. If q_1 oscillates for three consecutive sweeps, successive
/// iterates are averaged.
///
/// Throws SolverFailure at the iteration cap and PrecisionFailure on negative
/// intermediate mass.
inline Distribution solve_qsd(const BirthDeathModel& model, const PrecisionContext& ctx,
                              const SolverOptions& options = {}, SolverStats* stats = nullptr) {
    const long n_states = model.population();
    const ModelTag tag = ModelTag::of(model);
    if (n_states == 1) {
        return Distribution::point_mass(1, tag, ctx);
    }
    const Precision prec = ctx.precision();
    const auto size = static_cast<std::size_t>(n_states);

    std::vector<Real> birth;
    std::vector<Real> death;
    birth.reserve(size + 1);
    death.reserve(size + 1);
    for (long n = 0; n <= n_states; ++n) {
        birth.push_back(model.birth_rate(n, ctx));
        death.push_back(model.death_rate(n, ctx));
    }

    std::vector<Real> q;
    if (options.start == QsdStart::uniform) {
        q.assign(size, ctx.real(1) / n_states);
    } else {
        const int shift = model.r0() > 1 ? 0 : 1;
        q = detail::normalized(detail::product_weights(model, shift, ctx), ctx);
    }

    std::optional<Real> prev_change;
    int q1_trend = 0;
    int alternations = 0;
    bool damping = false;
    long damped = 0;
    std::vector<Real> tail(size, ctx.real(0));
    std::vector<Real> next(size, ctx.real(0));

    for (long it = 1; it <= options.max_iterations; ++it) {
        // tail[m-1] = sum_{k > m} q_k
        tail[size - 1] = ctx.real(0);
        for (std::size_t m = size - 1; m-- > 0;) {
            tail[m] = tail[m + 1] + q[m + 1];
        }

        next[0] = ctx.real(1);
        for (long m = 1; m < n_states; ++m) {
            const auto i = static_cast<std::size_t>(m);
            Real v = birth[i] * next[i - 1];
            v += death[1] * tail[i - 1];
            v /= death[i + 1];
            next[i] = std::move(v);
        }
        std::vector<Real> candidate = detail::normalized(next, ctx);

        if (damping) {
            for (std::size_t i = 0; i < size; ++i) {
                candidate[i] = (candidate[i] + q[i]) / 2;
            }
            candidate = detail::normalized(std::move(candidate), ctx);
            ++damped;
        }
        for (const Real& x : candidate) {
            if (!(x > 0)) {
                throw PrecisionFailure("solve_qsd: non-positive mass in iterate at " + model.tag());
            }
        }

        const int trend = (candidate[0] > q[0]) ? 1 : ((candidate[0] < q[0]) ? -1 : 0);
        alternations = (trend != 0 && trend == -q1_trend) ? alternations + 1 : 0;
        q1_trend = trend;
        if (!damping && alternations >= 3) {
            damping = true;
            prev_change.reset();
        }

        Real change = detail::max_relative_change(candidate, q, prec);
        q = std::move(candidate);

        if (stats != nullptr) {
            stats->iterations = it;
            stats->last_change = change.to_double();
            stats->damped_iterations = damped;
        }
        if (detail::converged(change, prev_change, ctx.fixed_point_tol())) {
            return {std::move(q), tag};
        }
        prev_change = std::move(change);
    }
    throw SolverFailure("solve_qsd: no convergence within " + std::to_string(options.max_iterations) +
                            " iterations at " + model.tag(),
                        options.max_iterations, prev_change ? prev_change->to_double() : 0.0);
}

/// Power-iteration oracle for the QSD.
///
/// Builds the dense step matrix M = I + Q/L of the generator Q restricted to
/// {1..N}, with L twice the largest total exit rate so that every eigenvalue
/// of M lies in [0, 1]. Row 1 loses mass mu_1/L to absorption. Starting from
/// the uniform vector, v <- vP / |vP|_1 converges to the left Perron vector of
/// M, which is the QSD. P starts as M and is squared whenever the observed
/// contraction per application is weaker than 0.1.
inline Distribution qsd_power_oracle(const BirthDeathModel& model, const PrecisionContext& ctx,
                                     const SolverOptions& options = {}, SolverStats* stats = nullptr) {
    const long n_states = model.population();
    const ModelTag tag = ModelTag::of(model);
    if (n_states == 1) {
        return Distribution::point_mass(1, tag, ctx);
    }
    const Precision prec = ctx.precision();
    const auto size = static_cast<std::size_t>(n_states);
    using Matrix = std::vector<std::vector<Real>>;

    Real uniformization = ctx.real(0);
    for (long n = 1; n <= n_states; ++n) {
        uniformization = max(uniformization, model.birth_rate(n, ctx) + model.death_rate(n, ctx));
    }
    uniformization *= 2;

    Matrix step(size, std::vector<Real>(size, ctx.real(0)));
    for (long n = 1; n <= n_states; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const Real up = model.birth_rate(n, ctx) / uniformization;
        const Real down = model.death_rate(n, ctx) / uniformization;
        step[i][i] = 1 - up - down;
        if (n < n_states) {
            step[i][i + 1] = up;
        }
        if (n > 1) {
            step[i][i - 1] = down;
        }
    }

    const auto square = [&](const Matrix& m) {
        Matrix out(size, std::vector<Real>(size, ctx.real(0)));
        std::vector<Real> row_terms(size, ctx.real(0));
        Real largest = ctx.real(0);
        for (std::size_t r = 0; r < size; ++r) {
            for (std::size_t c = 0; c < size; ++c) {
                for (std::size_t k = 0; k < size; ++k) {
                    mpfr_mul(row_terms[k].raw(), m[r][k].raw(), m[k][c].raw(), MPFR_RNDN);
                }
                out[r][c] = stable_sum(row_terms, prec);
                largest = max(largest, out[r][c]);
            }
        }
        // Overall scale does not matter for the normalized iterate.
        for (auto& row : out) {
            for (Real& x : row) {
                x /= largest;
            }
        }
        return out;
    };

    std::vector<Real> v(size, ctx.real(1) / n_states);
    std::vector<Real> terms(size, ctx.real(0));
    std::optional<Real> prev_change;
    int squarings = 0;
    for (long it = 1; it <= options.max_iterations; ++it) {
        std::vector<Real> w(size, ctx.real(0));
        for (std::size_t c = 0; c < size; ++c) {
            for (std::size_t r = 0; r < size; ++r) {
                mpfr_mul(terms[r].raw(), v[r].raw(), step[r][c].raw(), MPFR_RNDN);
            }
            w[c] = stable_sum(terms, prec);
        }
        w = detail::normalized(std::move(w), ctx);
        Real change = detail::max_relative_change(w, v, prec);
        v = std::move(w);

        if (stats != nullptr) {
            stats->iterations = it;
            stats->last_change = change.to_double();
            stats->squarings = squarings;
        }
        if (detail::converged(change, prev_change, ctx.fixed_point_tol())) {
            return {std::move(v), tag};
        }
        if (prev_change && !prev_change->is_zero() && change / *prev_change > 0.1 && squarings < 62) {
            step = square(step);
            ++squarings;
            prev_change.reset();
            continue;
        }
        prev_change = std::move(change);
    }
    throw SolverFailure("qsd_power_oracle: no convergence within " + std::to_string(options.max_iterations) +
                            " iterations at " + model.tag(),
                        options.max_iterations, prev_change ? prev_change->to_double() : 0.0);
}

}  // namespace sisqsd
