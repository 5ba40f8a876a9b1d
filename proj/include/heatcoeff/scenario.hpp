#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heatcoeff/config.hpp"
#include "heatcoeff/fit.hpp"
#include "heatcoeff/report.hpp"
#include "heatcoeff/spectral.hpp"

namespace heatcoeff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;

struct RunOptions {
    std::filesystem::path out_dir;  // empty: output.dir of the config, else heatcoeff_out/<name>
    double tolerance_scale = 1.0;
    std::optional<Task> task;  // overrides the config task
    bool write_files = true;
};

struct ComparisonRow {
    int n = 0;
    double fitted = 0.0;
    std::optional<double> predicted;  // empty when no formula exists
    double abs_err = 0.0;
    double uncertainty = 0.0;
    bool trusted = true;
    std::optional<double> tolerance;  // set for compared orders (already scaled)
    std::optional<double> sequential;
    double sequential_uncertainty = 0.0;
    bool passed = true;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string summary;  // human-readable table, deterministic
    std::vector<std::filesystem::path> files;
    std::vector<CoefficientReport> reports;
    std::optional<FitResult> fit;
    std::vector<ComparisonRow> comparison;
};

// Formula-side problem: catalog geometry with boundary kinds, potential and
// per-component time data applied.
struct FormulaSetup {
    CatalogGeometry cat;
    TimePerturbation tp;
};
FormulaSetup formula_setup(const ScenarioConfig& cfg);

// Scalar first-order data of D(t) = -(1 + gamma t + gamma2 t^2) Laplacian + eps t
// on a homogeneous region of dimension m and scalar curvature tau.
TimePerturbation time_perturbation(const oracle::TimeDependence& td, int m, double tau);

oracle::SpectrumSpec spectrum_spec(const ScenarioConfig& cfg);

// Rod problem on an interval geometry from the content section.
RodProblem rod_problem(const ScenarioConfig& cfg);

// a_n (or beta_n) for n = 0..n_max; orders without a formula become refusal rows.
std::vector<CoefficientReport> formula_reports(const ScenarioConfig& cfg, Task family, int n_max);

// Spectral boundary data from the JSON file referenced by operator.spectral.
SpectralBCData load_spectral_data(const std::filesystem::path& path);

// Orders fitted by default: even only on closed manifolds.
std::vector<int> default_orders(const ScenarioConfig& cfg);

// Executes the task, writes reports and maps failures to exit codes.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

// Fit report columns: n,fitted,predicted,abs_err,uncertainty,trusted_flag
std::string fit_csv(const std::vector<ComparisonRow>& rows);
nlohmann::json fit_json(const std::vector<ComparisonRow>& rows, const FitResult& fit);

}  // namespace heatcoeff
