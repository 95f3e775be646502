#pragma once

// Experiment configuration and its command-line / config-file parser.
//
// Precedence: command-line flags, then the --config file, then the per-
// experiment defaults. The config file is flat `key = value` text, one key per
// line, list values comma-separated, `#` comments:
//
//   experiment = scaling
//   r0 = 2, 5, 10
//   n = 25, 50, 100
//   approx = p0, ov3

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sisqsd/errors.hpp"

namespace sisqsd {

enum class ExperimentKind { table1, table2, scaling, single };
enum class OutputFormat { csv, text_table, json_lines };
enum class Approximation { beta_binomial, p0, p1, ov3, g1, g2 };

inline constexpr std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::table1: return "table1";
        case ExperimentKind::table2: return "table2";
        case ExperimentKind::scaling: return "scaling";
        case ExperimentKind::single: return "single";
    }
    return "?";
}

inline constexpr std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::text_table: return "text-table";
        case OutputFormat::json_lines: return "json-lines";
    }
    return "?";
}

inline constexpr std::string_view to_string(Approximation a) {
    switch (a) {
        case Approximation::beta_binomial: return "beta_binomial";
        case Approximation::p0: return "p0";
        case Approximation::p1: return "p1";
        case Approximation::ov3: return "ov3";
        case Approximation::g1: return "g1";
        case Approximation::g2: return "g2";
    }
    return "?";
}

inline constexpr Approximation kAllApproximations[] = {Approximation::beta_binomial, Approximation::p0,
                                                       Approximation::p1,            Approximation::ov3,
                                                       Approximation::g1,            Approximation::g2};

/// A real parameter as typed by the user. The text is kept so that it can be
/// parsed at whatever working precision a cell ends up using.
struct RealParam {
    std::string text;
    double value = 0.0;

    static RealParam parse(const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + text + "'");
        }
        if (used != text.size() || !std::isfinite(v)) {
            throw ConfigError("not a finite number: '" + text + "'");
        }
        return {text, v};
    }
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::table1;
    std::vector<RealParam> r0_values;
    std::vector<long> n_values;
    std::vector<Approximation> approximations;
    std::optional<long> precision_bits;
    OutputFormat output_format = OutputFormat::text_table;
    std::optional<std::string> output_path;
    /// Non-fatal notes produced while validating (e.g. ov3 below threshold).
    std::vector<std::string> warnings;
};

/// Thrown by parse_config for --help; carries the rendered usage text.
class HelpRequested : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::string valid_approximation_labels() {
    std::string out;
    for (Approximation a : kAllApproximations) {
        out += (out.empty() ? "" : ", ") + std::string(to_string(a));
    }
    return out;
}

inline Approximation parse_approximation(const std::string& label) {
    for (Approximation a : kAllApproximations) {
        if (label == to_string(a)) {
            return a;
        }
    }
    throw ConfigError("unknown approximation '" + label + "'; valid labels: " + valid_approximation_labels());
}

inline std::vector<RealParam> r0_list(std::initializer_list<const char*> texts) {
    std::vector<RealParam> out;
    for (const char* t : texts) {
        out.push_back(RealParam::parse(t));
    }
    return out;
}

/// Approximations applicable to one cell when the user did not choose.
inline std::vector<Approximation> default_approximations(double r0, long n) {
    std::vector<Approximation> out;
    if (r0 > 1) {
        out = {Approximation::beta_binomial, Approximation::p1, Approximation::p0, Approximation::ov3};
    } else if (r0 < 1) {
        out = {Approximation::g1, Approximation::g2, Approximation::p0, Approximation::p1};
    } else {
        out = {Approximation::p0, Approximation::p1};
    }
    if (n < 2) {
        std::erase_if(out, [](Approximation a) {
            return a == Approximation::beta_binomial || a == Approximation::ov3 || a == Approximation::g1 ||
                   a == Approximation::g2;
        });
    }
    return out;
}

inline void validate(ExperimentConfig& cfg) {
    if (cfg.r0_values.empty() || cfg.n_values.empty()) {
        throw ConfigError(std::string(to_string(cfg.experiment)) + " needs --r0 and --n");
    }
    for (const RealParam& r : cfg.r0_values) {
        if (!(r.value > 0)) {
            throw ConfigError("R0 must be positive, got " + r.text);
        }
    }
    for (long n : cfg.n_values) {
        if (n < 1) {
            throw ConfigError("N must be at least 1, got " + std::to_string(n));
        }
    }
    if (cfg.experiment == ExperimentKind::single && (cfg.r0_values.size() != 1 || cfg.n_values.size() != 1)) {
        throw ConfigError("single takes exactly one --r0 and one --n value");
    }
    if (cfg.experiment == ExperimentKind::scaling) {
        if (cfg.n_values.size() < 3) {
            throw ConfigError("scaling needs at least three N values");
        }
        for (std::size_t j = 1; j < cfg.n_values.size(); ++j) {
            if (cfg.n_values[j] != 2 * cfg.n_values[j - 1]) {
                throw ConfigError("scaling needs consecutive doublings of N (e.g. 25,50,100); " +
                                  std::to_string(cfg.n_values[j]) + " does not double " +
                                  std::to_string(cfg.n_values[j - 1]));
            }
        }
    }
    if (cfg.precision_bits && *cfg.precision_bits < 64) {
        throw ConfigError("--precision-bits must be at least 64");
    }

    const long smallest_n = *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
    for (Approximation a : cfg.approximations) {
        for (const RealParam& r : cfg.r0_values) {
            if (a == Approximation::g2 && r.value >= 1) {
                throw ConfigError("g2 is defined only for R0 < 1, but R0 = " + r.text +
                                  " was requested; drop g2 or use R0 values below 1");
            }
            if (a == Approximation::ov3 && r.value <= 1) {
                cfg.warnings.push_back("ov3 at R0 = " + r.text +
                                       " lies outside the regime R0 > 1 it was derived for");
            }
        }
        if ((a == Approximation::ov3 || a == Approximation::beta_binomial) && smallest_n < 2) {
            throw ConfigError(std::string(to_string(a)) + " needs N >= 2");
        }
    }
}

}  // namespace detail

/// Parses command-line tokens (without the program name).
///
/// Throws ConfigError for invalid or contradictory settings and HelpRequested
/// for --help.
inline ExperimentConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Quasi-stationary distribution of the logistic SIS model: approximation errors", "sisqsd"};
    app.allow_config_extras(false);

    std::string experiment;
    std::vector<std::string> r0_text;
    std::vector<long> n_values;
    std::vector<std::string> approx_text;
    std::optional<long> precision_bits;
    std::string format = "text-table";
    std::optional<std::string> out_path;

    app.add_option("--experiment", experiment, "table1 | table2 | scaling | single")->required();
    app.add_option("--r0", r0_text, "R0 values, comma separated")->delimiter(',');
    app.add_option("--n", n_values, "population sizes, comma separated")->delimiter(',');
    app.add_option("--approx", approx_text, "approximations: " + detail::valid_approximation_labels())
        ->delimiter(',');
    app.add_option("--precision-bits", precision_bits, "override the per-cell working precision");
    app.add_option("--format", format, "csv | text-table | json-lines");
    app.add_option("--out", out_path, "write the report here instead of standard output");
    app.set_config("--config", "", "flat key = value file; flags override its values");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    ExperimentConfig cfg;
    if (experiment == "table1") {
        cfg.experiment = ExperimentKind::table1;
    } else if (experiment == "table2") {
        cfg.experiment = ExperimentKind::table2;
    } else if (experiment == "scaling") {
        cfg.experiment = ExperimentKind::scaling;
    } else if (experiment == "single") {
        cfg.experiment = ExperimentKind::single;
    } else {
        throw ConfigError("unknown experiment '" + experiment + "'; valid: table1, table2, scaling, single");
    }

    if (format == "csv") {
        cfg.output_format = OutputFormat::csv;
    } else if (format == "text-table") {
        cfg.output_format = OutputFormat::text_table;
    } else if (format == "json-lines") {
        cfg.output_format = OutputFormat::json_lines;
    } else {
        throw ConfigError("unknown format '" + format + "'; valid: csv, text-table, json-lines");
    }

    for (const std::string& t : r0_text) {
        cfg.r0_values.push_back(RealParam::parse(t));
    }
    cfg.n_values = n_values;
    for (const std::string& t : approx_text) {
        cfg.approximations.push_back(detail::parse_approximation(t));
    }
    cfg.precision_bits = precision_bits;
    cfg.output_path = out_path;

    // Defaults: table2 is the below-threshold grid, table1 (and scaling) the
    // above-threshold one.
    const bool below = cfg.experiment == ExperimentKind::table2;
    if (cfg.experiment != ExperimentKind::single) {
        if (cfg.r0_values.empty()) {
            cfg.r0_values = below ? detail::r0_list({"0.5", "0.2", "0.1"}) : detail::r0_list({"2", "5", "10"});
        }
        if (cfg.n_values.empty()) {
            cfg.n_values = {25, 50, 100};
        }
    }
    if (cfg.approximations.empty()) {
        if (cfg.experiment == ExperimentKind::table2) {
            cfg.approximations = {Approximation::g1, Approximation::g2, Approximation::p0, Approximation::p1};
        } else if (cfg.experiment == ExperimentKind::table1) {
            cfg.approximations = {Approximation::beta_binomial, Approximation::p1, Approximation::p0,
                                  Approximation::ov3};
        } else if (!cfg.r0_values.empty() && !cfg.n_values.empty()) {
            // scaling / single: pick what is defined on the side of threshold
            // shared by all requested R0.
            const auto [lo, hi] = std::minmax_element(cfg.r0_values.begin(), cfg.r0_values.end(),
                                                      [](const auto& a, const auto& b) { return a.value < b.value; });
            const double r0 = (lo->value > 1) ? lo->value : ((hi->value < 1) ? hi->value : 1.0);
            cfg.approximations = detail::default_approximations(
                r0, *std::min_element(cfg.n_values.begin(), cfg.n_values.end()));
        }
    }

    detail::validate(cfg);
    return cfg;
}

inline ExperimentConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_config(args);
}

}  // namespace sisqsd
