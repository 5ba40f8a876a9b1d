#pragma once

#include <span>
#include <vector>

#include "heatcoeff/oracle/heat_trace.hpp"

namespace heatcoeff {

using oracle::TraceSample;
using oracle::TraceSamples;

struct FitResult {
    std::vector<double> coefficients;  // indexed by n, length n_max + 1; unfitted orders are 0
    std::vector<double> uncertainty;   // per coefficient, same indexing
    std::vector<bool> fitted;          // which orders were in the model
    double residual_norm = 0.0;        // of the scaled system
    double condition_estimate = 0.0;   // of the column-scaled design matrix
    double t_min = 0.0, t_max = 0.0;
    int n_max = 0;
    bool trusted = true;  // false when condition_estimate > 1e10
};

inline constexpr double kTrustedCondition = 1e10;

// Geometric grid of `count` points spanning [t_min, t_max].
std::vector<double> geometric_grid(double t_min, double t_max, std::size_t count);

// Least squares for T(t) ~ sum_n c_n t^((n - shift)/2) over the given orders
// (all of 0..n_max when empty). Rows are scaled by t^(shift/2), columns to
// unit norm, then solved by column-pivoted Householder QR.
FitResult fit_half_powers(const TraceSamples& samples, int shift, int n_max, std::span<const int> orders = {});

// Heat trace model with powers t^((n - m)/2).
FitResult fit_trace(const TraceSamples& samples, int m, int n_max, std::span<const int> orders = {});

// Heat content model with powers t^(n/2).
FitResult fit_content(const TraceSamples& samples, int n_max, std::span<const int> orders = {});

// Cross-check mode: peels coefficients one order at a time. Each c_n is the
// t -> 0 limit of (T - sum_{k<n} c_k t^((k-shift)/2)) t^((shift-n)/2),
// estimated by polynomial (Richardson) extrapolation in sqrt(t) over the
// smallest-t samples.
FitResult sequential_extract(const TraceSamples& samples, int shift, int n_max, std::span<const int> orders = {});

}  // namespace heatcoeff
