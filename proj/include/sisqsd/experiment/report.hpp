#pragma once

// Report renderers.
//
//   csv         header `r0,n,approx,err1,err2,precision_bits`, errors in
//               scientific notation with 6 significant digits. A scaling run
//               appends a blank line and a verdict block.
//   text-table  one row per (R0, N), one Err1 column per approximation,
//               2 significant digits (round-half-even).
//   json-lines  one object per report, then one per verdict.

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sisqsd/error_analysis.hpp"
#include "sisqsd/experiment/runner.hpp"

namespace sisqsd {

namespace detail {

inline std::string format_r0(double r0) {
    std::ostringstream os;
    os << r0;
    return os.str();
}

inline std::string format_error(const ErrorReport& r, const Real& value, int digits) {
    return r.ok() ? value.to_scientific(digits) : "nan";
}

inline void write_csv(std::ostream& os, const ExperimentResult& res) {
    os << "r0,n,approx,err1,err2,precision_bits\n";
    for (const ErrorReport& r : res.reports) {
        os << format_r0(r.r0) << ',' << r.n << ',' << r.approx_name << ',' << format_error(r, r.err1, 6) << ','
           << format_error(r, r.err2, 6) << ',' << r.precision_bits << '\n';
    }
    if (!res.verdicts.empty()) {
        os << "\nr0,approx,n_values,err1_values,verdict\n";
        for (const ScalingVerdict& v : res.verdicts) {
            std::string ns;
            std::string errs;
            for (std::size_t i = 0; i < v.sampled_n.size(); ++i) {
                ns += (i ? ";" : "") + std::to_string(v.sampled_n[i]);
                errs += (i ? ";" : "") + (v.errors[i].is_nan() ? std::string("nan") : v.errors[i].to_scientific(6));
            }
            os << format_r0(v.r0) << ',' << v.approx_name << ',' << ns << ',' << errs << ',' << to_string(v.verdict)
               << '\n';
        }
    }
}

inline void write_text_table(std::ostream& os, const ExperimentResult& res) {
    // Columns in first-seen order; rows in first-seen (R0, N) order.
    std::vector<std::string> columns;
    std::vector<std::pair<double, long>> rows;
    for (const ErrorReport& r : res.reports) {
        if (std::find(columns.begin(), columns.end(), r.approx_name) == columns.end()) {
            columns.push_back(r.approx_name);
        }
        const std::pair<double, long> cell{r.r0, r.n};
        if (std::find(rows.begin(), rows.end(), cell) == rows.end()) {
            rows.push_back(cell);
        }
    }
    const int width = 20;
    os << std::setw(6) << "R0" << std::setw(6) << "N";
    for (const std::string& c : columns) {
        os << std::setw(width) << ("Err1(" + c + ")");
    }
    os << '\n';
    std::optional<double> last_r0;
    for (const auto& [r0, n] : rows) {
        if (last_r0 && *last_r0 != r0) {
            os << '\n';
        }
        last_r0 = r0;
        os << std::setw(6) << format_r0(r0) << std::setw(6) << n;
        for (const std::string& c : columns) {
            std::string cell = "-";
            for (const ErrorReport& r : res.reports) {
                if (r.r0 == r0 && r.n == n && r.approx_name == c) {
                    cell = r.ok() ? r.err1.to_scientific(2) : "failed";
                }
            }
            os << std::setw(width) << cell;
        }
        os << '\n';
    }
    bool header = false;
    for (const ErrorReport& r : res.reports) {
        if (!r.ok()) {
            if (!header) {
                os << "\nfailures:\n";
                header = true;
            }
            os << "  R0=" << format_r0(r.r0) << " N=" << r.n << " " << r.approx_name << ": " << r.failure << '\n';
        }
    }
    if (!res.verdicts.empty()) {
        os << "\nscaling verdicts (error ratio per doubling of N):\n";
        for (const ScalingVerdict& v : res.verdicts) {
            os << "  R0=" << std::setw(4) << std::left << format_r0(v.r0) << std::right << ' ' << std::setw(14)
               << std::left << v.approx_name << std::right;
            for (double ratio : v.ratios) {
                std::ostringstream cell;
                cell << std::setprecision(3) << ratio;
                os << std::setw(11) << cell.str();
            }
            os << "  " << to_string(v.verdict) << '\n';
        }
    }
}

inline void write_json_lines(std::ostream& os, const ExperimentResult& res) {
    // Error values are written as raw JSON numbers so that magnitudes below
    // the double range survive.
    for (const ErrorReport& r : res.reports) {
        os << "{\"r0\":" << format_r0(r.r0) << ",\"n\":" << r.n << ",\"approx\":" << nlohmann::json(r.approx_name).dump();
        if (r.ok()) {
            os << ",\"err1\":" << r.err1.to_scientific(6) << ",\"err2\":" << r.err2.to_scientific(6);
        } else {
            os << ",\"err1\":null,\"err2\":null,\"failure\":" << nlohmann::json(r.failure).dump();
        }
        os << ",\"precision_bits\":" << r.precision_bits << "}\n";
    }
    for (const ScalingVerdict& v : res.verdicts) {
        nlohmann::json j;
        j["r0"] = v.r0;
        j["approx"] = v.approx_name;
        j["n_values"] = v.sampled_n;
        j["ratios"] = v.ratios;
        j["verdict"] = std::string(to_string(v.verdict));
        os << j.dump() << '\n';
    }
}

}  // namespace detail

inline void emit_report(const ExperimentResult& result, OutputFormat format, std::ostream& os) {
    if (result.reports.empty()) {
        throw InvalidParameter("emit_report: no reports to render");
    }
    switch (format) {
        case OutputFormat::csv: detail::write_csv(os, result); break;
        case OutputFormat::text_table: detail::write_text_table(os, result); break;
        case OutputFormat::json_lines: detail::write_json_lines(os, result); break;
    }
}

inline std::string render_report(const ExperimentResult& result, OutputFormat format) {
    std::ostringstream os;
    emit_report(result, format, os);
    return os.str();
}

/// Writes to `path`, or to standard output when no path is given.
inline void emit_report(const ExperimentResult& result, OutputFormat format, const std::optional<std::string>& path) {
    if (!path) {
        emit_report(result, format, std::cout);
        std::cout.flush();
        return;
    }
    const std::string text = render_report(result, format);
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + *path + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw Error("failed writing '" + *path + "'");
    }
}

}  // namespace sisqsd
