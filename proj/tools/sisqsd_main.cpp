// sisqsd: approximation errors for the QSD of the logistic SIS model.
//
// Exit status: 0 on success, 1 if any cell failed, 2 on a configuration error.

#include <iostream>

#include "sisqsd/experiment/config.hpp"
#include "sisqsd/experiment/report.hpp"
#include "sisqsd/experiment/runner.hpp"

int main(int argc, char** argv) {
    sisqsd::ExperimentConfig cfg;
    try {
        cfg = sisqsd::parse_config(argc, argv);
    } catch (const sisqsd::HelpRequested& help) {
        std::cout << help.what();
        return 0;
    } catch (const sisqsd::ConfigError& e) {
        std::cerr << "sisqsd: " << e.what() << '\n';
        return 2;
    }
    for (const std::string& w : cfg.warnings) {
        std::cerr << "sisqsd: warning: " << w << '\n';
    }

    const sisqsd::ExperimentResult result = sisqsd::run_experiment(cfg);
    try {
        sisqsd::emit_report(result, cfg.output_format, cfg.output_path);
    } catch (const sisqsd::Error& e) {
        std::cerr << "sisqsd: " << e.what() << '\n';
        return 1;
    }
    for (const sisqsd::ErrorReport& r : result.reports) {
        if (!r.ok()) {
            std::cerr << "sisqsd: R0=" << r.r0 << " N=" << r.n << " " << r.approx_name << " failed: " << r.failure
                      << '\n';
        }
    }
    return result.all_ok() ? 0 : 1;
}
