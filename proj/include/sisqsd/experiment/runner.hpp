#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sisqsd/approx.hpp"
#include "sisqsd/error_analysis.hpp"
#include "sisqsd/experiment/config.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/qsd.hpp"

namespace sisqsd {

struct ExperimentResult {
    /// Ordered by (R0, N, approximation) in configuration order.
    std::vector<ErrorReport> reports;
    /// Scaling experiment only: one verdict per (R0, approximation).
    std::vector<ScalingVerdict> verdicts;

    [[nodiscard]] bool all_ok() const {
        return std::all_of(reports.begin(), reports.end(), [](const ErrorReport& r) { return r.ok(); });
    }
};

struct RunOptions {
    /// Cross-check every exact QSD against the power-iteration oracle.
    bool verify_with_oracle = true;
};

/// Exact QSDs keyed by (N, R0 text, precision bits), for one run.
class QsdCache {
public:
    const Distribution& get(const BirthDeathModel& model, const std::string& r0_text,
                            const PrecisionContext& ctx, bool verify) {
        const Key key{model.population(), r0_text, ctx.significand_bits()};
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            Distribution q = solve_qsd(model, ctx);
            if (verify) {
                check_against_oracle(q, model, ctx);
            }
            it = entries_.emplace(key, std::move(q)).first;
        }
        return it->second;
    }

    [[nodiscard]] std::size_t size() const { return entries_.size(); }

private:
    using Key = std::tuple<long, std::string, long>;

    static void check_against_oracle(const Distribution& q, const BirthDeathModel& model,
                                     const PrecisionContext& ctx) {
        const Distribution oracle = qsd_power_oracle(model, ctx);
        const Real limit = ctx.fixed_point_tol() * 10;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Real d = rel_diff(q.probs()[i], oracle.probs()[i]);
            if (d >= limit) {
                throw SolverFailure("solver and oracle disagree at state " + std::to_string(i + 1) + " (" +
                                        model.tag() + "): relative difference " + d.to_scientific(3),
                                    0, d.to_double());
            }
        }
    }

    std::map<Key, Distribution> entries_;
};

/// Approximating distribution `which` for `model`; `exact` feeds the fit.
inline Distribution approximate(Approximation which, const BirthDeathModel& model, const Distribution& exact,
                                const PrecisionContext& ctx) {
    switch (which) {
        case Approximation::p0: return p0_distribution(model, ctx);
        case Approximation::p1: return p1_distribution(model, ctx);
        case Approximation::ov3: return ov3_distribution(model, ctx);
        case Approximation::g1: return geometric_distribution(model, GeometricVariant::g1, ctx);
        case Approximation::g2: return geometric_distribution(model, GeometricVariant::g2, ctx);
        case Approximation::beta_binomial: return beta_binomial_fit(exact, ctx);
    }
    throw InvalidParameter("unknown approximation");
}

namespace detail {

inline ErrorReport failed_report(Approximation a, long n, const RealParam& r0, long bits, const std::string& why) {
    const Precision p{64};
    return {std::string(to_string(a)), n, r0.value, Real::nan(p), Real::nan(p), bits, why};
}

}  // namespace detail

/// Evaluates every (R0, N) cell of the configuration.
///
/// Failures are confined to their cell (solver failure) or their single
/// report (approximation failure); the remaining reports are still produced.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {}) {
    ExperimentResult result;
    QsdCache cache;

    for (const RealParam& r0 : cfg.r0_values) {
        for (long n : cfg.n_values) {
            const PrecisionContext ctx = cfg.precision_bits ? PrecisionContext::with_bits(*cfg.precision_bits)
                                                            : default_context(n, r0.value);
            const long bits = ctx.significand_bits();
            const BirthDeathModel model = sis_model(n, Real::parse(r0.text, ctx.precision()), ctx.real(1));

            const Distribution* exact = nullptr;
            std::string cell_failure;
            try {
                exact = &cache.get(model, r0.text, ctx, options.verify_with_oracle);
            } catch (const Error& e) {
                cell_failure = e.what();
            }

            for (Approximation a : cfg.approximations) {
                if (exact == nullptr) {
                    result.reports.push_back(detail::failed_report(a, n, r0, bits, cell_failure));
                    continue;
                }
                try {
                    const Distribution approx = approximate(a, model, *exact, ctx);
                    result.reports.push_back(
                        {std::string(to_string(a)), n, r0.value, err1(approx, *exact), err2(approx, *exact), bits, {}});
                } catch (const Error& e) {
                    result.reports.push_back(detail::failed_report(a, n, r0, bits, e.what()));
                }
            }
        }
    }

    if (cfg.experiment == ExperimentKind::scaling) {
        for (const RealParam& r0 : cfg.r0_values) {
            for (Approximation a : cfg.approximations) {
                std::vector<long> ns;
                std::vector<Real> errs;
                for (const ErrorReport& rep : result.reports) {
                    if (rep.r0 == r0.value && rep.approx_name == to_string(a)) {
                        ns.push_back(rep.n);
                        errs.push_back(rep.err1);
                    }
                }
                try {
                    result.verdicts.push_back(classify_scaling(std::string(to_string(a)), r0.value, ns, errs));
                } catch (const Error&) {
                    // failed cells or exactly vanishing errors
                    ScalingVerdict v;
                    v.approx_name = std::string(to_string(a));
                    v.r0 = r0.value;
                    v.sampled_n = ns;
                    v.errors = errs;
                    result.verdicts.push_back(std::move(v));
                }
            }
        }
    }
    return result;
}

}  // namespace sisqsd
