#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatcoeff/errors.hpp"
#include "heatcoeff/geometry.hpp"
#include "heatcoeff/oracle/heat_content.hpp"
#include "heatcoeff/oracle/spectrum.hpp"
#include "heatcoeff/rod.hpp"

namespace heatcoeff {

// Config violation with a 1-based source position (0 when unknown).
class SchemaError : public Error {
public:
    SchemaError(const std::string& message, int line = 0, int column = 0);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_, column_;
};

enum class Task { Coeffs, Spectrum, Trace, Content, Verify };

std::string_view to_string(Task task);
Task task_from_string(std::string_view name);

struct FitConfig {
    double t_min = 1e-4;
    double t_max = 1e-3;
    std::size_t samples = 40;
    int n_max = 4;
    std::vector<int> orders;  // empty: all, or even only on closed manifolds
    double lambda_max = 0.0;  // 0: automatic
    bool cross_check = false;  // sequential extraction must agree
};

struct RodEndData {
    double psi0 = 0.0;
    double psi1 = 0.0;
};

struct ContentConfig {
    std::string oracle = "series";  // series | cn
    Profile phi = 1.0;
    Profile rho = 1.0;
    std::optional<Profile> E;  // replaces the constant -V on a rod
    Profile p0 = 0.0;
    Profile p1 = 0.0;
    RodEndData left, right;
    double G1 = 0.0, F1 = 0.0, E1 = 0.0;
    oracle::CnOptions cn;
};

struct ScenarioConfig {
    std::string name;  // file stem
    std::string description;
    std::filesystem::path source;
    Task task = Task::Verify;

    std::string geometry = "interval";
    std::vector<double> params{1.0};
    int custom_m = 0;                    // geometry "custom" only
    std::map<std::string, double> region;  // overrides on region 0

    oracle::EndCondition boundary;              // every component
    std::optional<oracle::EndCondition> right;  // right end of an interval, top of a cylinder
    double junction_measure = 0.0;              // > 0 turns the first component into D/N halves

    double V = 0.0;
    oracle::TimeDependence time;
    std::optional<std::filesystem::path> spectral;  // JSON file, resolved against the config

    int coeffs_n_max = 4;
    SmearingJets jets;

    double spectrum_lambda_max = 0.0;
    std::size_t spectrum_count = 0;

    FitConfig fit;
    std::map<int, double> tolerance;  // order -> absolute tolerance; compared orders
    std::optional<ContentConfig> content;

    std::string output_dir;  // empty: ./heatcoeff_out/<name>
};

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& source = "<string>");

// Keys accepted in each section, for documentation and --help output.
std::string schema_summary();

}  // namespace heatcoeff
