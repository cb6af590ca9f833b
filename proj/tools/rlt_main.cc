// Copyright 2026 The RLT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlt/config.h"
#include "rlt/errors.h"
#include "rlt/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitApplicability = 3;
constexpr int kExitSolver = 4;

struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
};

int run(const std::string& command, const Options& opts) {
    rlt::ExperimentConfig cfg = rlt::load_config(opts.config);
    if (opts.seed) {
        cfg.seed = *opts.seed;
    }
    const std::filesystem::path out(opts.out);
    std::filesystem::create_directories(out);
    if (command == "analyze") {
        rlt::write_report(out, "analysis.json", "amplification.csv", rlt::analyze(cfg));
        std::cout << "wrote " << (out / "analysis.json").string() << "\n";
    } else if (command == "simulate") {
        const auto files = rlt::simulate(cfg);
        for (const auto& [rel, data] : files) {
            rlt::write_json(out / rel, data);
        }
        std::cout << "wrote " << files.size() << " data files under " << (out / "data").string()
                  << "\n";
    } else if (command == "fit") {
        rlt::write_report(out, "fit_report.json", "fit.csv",
                          rlt::fit(cfg, rlt::directory_loader(out)));
        std::cout << "wrote " << (out / "fit_report.json").string() << "\n";
    } else if (command == "verify") {
        const rlt::Report report = rlt::verify(cfg);
        rlt::write_report(out, "verify.json", "verify.csv", report);
        std::cout << "wrote " << (out / "verify.json").string() << " (all ratios in range: "
                  << (report.json["all_ratios_in_range"].get<bool>() ? "yes" : "no") << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust Lindbladian tomography: analyze, simulate, fit and verify"};
    app.require_subcommand(1);
    Options opts;
    for (const char* name : {"analyze", "simulate", "fit", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config, "Experiment configuration (JSON)")->required();
        sub->add_option("--out", opts.out, "Output directory (fit reads data from <out>/data)");
        sub->add_option("--seed", opts.seed, "Override the configured seed");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opts);
    } catch (const rlt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rlt::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rlt::NotPhysicalError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rlt::ApplicabilityError& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return kExitApplicability;
    } catch (const rlt::SingularityError& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return kExitApplicability;
    } catch (const rlt::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
