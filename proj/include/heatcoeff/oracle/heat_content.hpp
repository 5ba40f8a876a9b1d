#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatcoeff/oracle/heat_trace.hpp"
#include "heatcoeff/rod.hpp"

namespace heatcoeff::oracle {

// Rod [0, L], Dirichlet psi = 0, phi = rho = 1: exact sine series.
TraceSample rod_dirichlet_content(double L, double t);

// Rod [0, L], Robin u_;m + S u = 0 at both ends, phi = rho = 1:
// eigenfunction expansion over the even modes.
TraceSample rod_robin_content(double L, double S, double t);

// Unit-weight heat content of a hemisphere of radius R with Dirichlet
// equator, phi = rho = 1 (Legendre series over odd l).
TraceSample hemisphere_dirichlet_content(double R, double t);

// Circle of length L, D = -(d^2/dx^2 + E) with constant E; phi and rho are
// constant + trigonometric profiles with periodic frequencies 2 pi k / L.
struct CircleContent {
    double L = 2.0 * 3.14159265358979323846;
    double E = 0.0;
    Profile phi = 1.0;
    Profile rho = 1.0;
};
TraceSample circle_content(const CircleContent& c, double t);

struct CnOptions {
    std::size_t N = 200;      // spatial intervals on the coarsest grid
    std::size_t steps = 0;    // time steps on the coarsest grid, 0 = max(N/5, 8)
    double min_order = 1.9;   // required observed order in dx and dt
};

struct CnResult {
    double value = 0.0;           // Richardson-extrapolated heat content
    double error_estimate = 0.0;
    double order_dx = 0.0;
    double order_dt = 0.0;
};

// Single Crank-Nicolson solve (4 backward-Euler half steps to start) with
// ghost-point Robin ends; heat content by the trapezoid rule.
double rod_content_cn_raw(const RodProblem& rod, double t, std::size_t N, std::size_t steps);

// Step-halving convergence certificate in dx and dt plus joint Richardson
// extrapolation. Throws NumericalFailure when an observed order falls below
// min_order.
CnResult rod_content_cn(const RodProblem& rod, double t, const CnOptions& opt = {});

// Heat content samples at many t; independent solves run in parallel.
TraceSamples rod_content_samples(const RodProblem& rod, std::span<const double> ts, const CnOptions& opt = {},
                                 bool parallel = true);

}  // namespace heatcoeff::oracle
