#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "heatcoeff/config.hpp"
#include "heatcoeff/scenario.hpp"

namespace fs = std::filesystem;
using namespace heatcoeff;

namespace {

#ifndef HEATCOEFF_SCENARIO_DIR
#define HEATCOEFF_SCENARIO_DIR "scenarios"
#endif

int list_scenarios(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        std::cerr << "heatcoeff: scenario directory '" << dir.string() << "' not found\n";
        return kExitSchema;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".cfg") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            const auto cfg = load_config(f);
            std::cout << cfg.name << "\t" << to_string(cfg.task) << "\t" << cfg.description << "\n";
        } catch (const Error& e) {
            std::cout << f.stem().string() << "\t(invalid)\t" << e.what() << "\n";
        }
    }
    return kExitOk;
}

// Worst outcome wins: schema errors, then numerical failures, then mismatches.
int combine(int a, int b) {
    auto rank = [](int c) { return c == kExitSchema ? 3 : c == kExitNumerical ? 2 : c == kExitMismatch ? 1 : 0; };
    return rank(b) > rank(a) ? b : a;
}

int run_configs(const std::vector<std::string>& configs, const RunOptions& opt) {
    if (configs.empty()) {
        std::cerr << "heatcoeff: --config is required\n";
        return kExitSchema;
    }
    int code = kExitOk;
    for (const auto& path : configs) {
        ScenarioConfig cfg;
        try {
            cfg = load_config(path);
        } catch (const SchemaError& e) {
            std::cerr << path << ": " << e.what() << "\n";
            code = combine(code, kExitSchema);
            continue;
        }
        const auto res = run_scenario(cfg, opt);
        std::cout << res.summary;
        for (const auto& f : res.files) std::cout << "  wrote " << f.string() << "\n";
        code = combine(code, res.exit_code);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat trace and heat content coefficients: formula evaluation and numerical verification"};
    app.require_subcommand(0, 1);

    bool list = false, schema = false;
    std::string scenario_dir = HEATCOEFF_SCENARIO_DIR;
    double tolerance_scale = 1.0;
    int threads = 0;
    app.add_flag("--list-scenarios", list, "List bundled scenario configs");
    app.add_option("--scenario-dir", scenario_dir, "Directory searched by --list-scenarios");
    app.add_flag("--print-schema", schema, "Print the accepted config keys per section");
    app.add_option("--tolerance-scale", tolerance_scale, "Multiply every verification tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "OpenMP threads (also HEATCOEFF_THREADS)")->check(CLI::PositiveNumber);

    std::vector<std::string> configs;
    std::string out;
    std::vector<std::pair<CLI::App*, std::optional<Task>>> subs;
    const std::vector<std::pair<std::string, std::string>> defs = {
        {"coeffs", "Evaluate a_n / beta_n formulas"},
        {"spectrum", "Enumerate the eigenvalues of the scenario"},
        {"trace", "Sample the heat trace on the fit window"},
        {"content", "Sample the heat content and evaluate beta_n"},
        {"verify", "Evaluate formulas, fit the oracle samples and compare"},
        {"run", "Run the task named in each config"},
    };
    for (const auto& [name, help] : defs) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", configs, "Scenario config (repeatable)")->required();
        sub->add_option("--out", out, "Output directory");
        subs.emplace_back(sub, name == "run" ? std::nullopt : std::optional<Task>(task_from_string(name)));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitSchema;
    }

    if (threads == 0) {
        if (const char* env = std::getenv("HEATCOEFF_THREADS")) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception&) {
                threads = 0;
            }
            if (threads <= 0) {
                std::cerr << "heatcoeff: HEATCOEFF_THREADS must be a positive integer\n";
                return kExitSchema;
            }
        }
    }
    if (threads > 0) omp_set_num_threads(threads);

    if (schema) {
        std::cout << schema_summary();
        return kExitOk;
    }
    if (list) return list_scenarios(scenario_dir);

    for (const auto& [sub, task] : subs) {
        if (!sub->parsed()) continue;
        RunOptions opt;
        opt.out_dir = out;
        opt.tolerance_scale = tolerance_scale;
        opt.task = task;
        return run_configs(configs, opt);
    }
    std::cout << app.help();
    return kExitSchema;
}
