#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heatcoeff/oracle/spectrum.hpp"

namespace heatcoeff::oracle {

struct TraceSample {
    double t = 0.0;
    double value = 0.0;
    double bound = 0.0;  // truncation bound
};
using TraceSamples = std::vector<TraceSample>;

// sum_{n in Z} exp(-a (n + shift)^2), shift in [0, 1). Direct summation for
// a >= pi, Poisson-resummed form otherwise. `bound` receives the truncation bound.
double theta_sum(double a, double shift, double* bound = nullptr);

// Heat trace Tr exp(-t D) with f = 1. Theta-summable problems (circle, torus,
// intervals and rectangles with D/D, N/N or D/N ends, cylinders with such
// ends) use closed forms; everything else sums the enumerated spectrum and
// bounds the tail by a Weyl-type counting estimate. Time dependence is
// applied by rescaling (circle and interval only).
TraceSample heat_trace(const SpectrumSpec& spec, double t, double tol = 1e-13);

// Same for many times; the spectrum is enumerated once for the smallest t.
TraceSamples heat_trace_samples(const SpectrumSpec& spec, std::span<const double> ts, double tol = 1e-13);

// Bound on sum_{lambda > Lambda} mult exp(-t lambda) for the unshifted spectrum.
double tail_bound(const SpectrumSpec& spec, double Lambda, double t);

// Smallest power-of-two multiple of 1/t for which tail_bound <= tol.
double required_lambda(const SpectrumSpec& spec, double t, double tol);

// exp(-eps t^2/2) * static(s(t)), s = t + gamma t^2/2 + gamma2 t^3/3.
TraceSample time_dependent_trace(const SpectrumSpec& spec, double t, double tol = 1e-13);
double rescaled_time(const TimeDependence& td, double t);

// Spectral sums sum_i mult_i exp(-t v_i), ascending v. The serial kernel is
// one compensated pass; the parallel kernel sums fixed-size chunks
// (independent of the thread count) and merges them in order, so its result
// is bit-identical for any number of threads.
double spectral_sum_serial(std::span<const double> values, std::span<const std::uint64_t> mult, double t);
double spectral_sum_parallel(std::span<const double> values, std::span<const std::uint64_t> mult, double t);

inline constexpr std::size_t kSumChunk = 2048;

}  // namespace heatcoeff::oracle
