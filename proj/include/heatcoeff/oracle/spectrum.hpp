#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "heatcoeff/geometry.hpp"

namespace heatcoeff::oracle {

enum class Problem { Interval, Circle, Rectangle, FlatTorus, Disk, Sphere, Hemisphere, DeltaCircle, Cylinder };

Problem problem_from_string(std::string_view name);
std::string_view to_string(Problem p);

struct EndCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double S = 0.0;  // Robin: u_;m + S u = 0 with inward normal
};

// D(t) = -(1 + gamma t + gamma2 t^2) Laplacian + epsilon t
struct TimeDependence {
    double gamma = 0.0;
    double gamma2 = 0.0;
    double epsilon = 0.0;
    bool is_static() const { return gamma == 0.0 && gamma2 == 0.0 && epsilon == 0.0; }
};

// Parameters follow the geometry catalog: interval(L), circle(L),
// rectangle(a,b), flat_torus(L1,L2), disk(R), sphere(R), hemisphere(R),
// delta_circle(L,Xi), cylinder(R,H). `left` is the condition on every edge
// except the right end of an interval and the top of a cylinder.
struct SpectrumSpec {
    Problem problem = Problem::Interval;
    std::vector<double> params{1.0};
    EndCondition left, right;
    double V = 0.0;  // constant potential, shifts every eigenvalue
    TimeDependence time;
    double lambda_max = 0.0;  // cutoff on the unshifted spectrum; 0 = automatic
    std::size_t count = 0;    // alternative cutoff: the lowest `count` eigenvalues

    void validate() const;
};

// Distinct eigenvalue levels in increasing order with multiplicities.
struct Spectrum {
    std::vector<double> values;
    std::vector<std::uint64_t> multiplicity;
    double lambda_max = 0.0;  // every eigenvalue <= lambda_max is present

    std::uint64_t total() const;
    std::vector<double> expanded() const;  // repeated by multiplicity
};

// Complete enumeration of the unshifted spectrum up to spec.lambda_max (or the
// lowest spec.count eigenvalues), then shifted by V.
Spectrum eigenvalues(const SpectrumSpec& spec);

// Upper bound N+(lambda) = a lambda + b sqrt(lambda) + c for the number of
// unshifted eigenvalues <= lambda, counted with multiplicity.
struct CountingBound {
    double a = 0.0, b = 0.0, c = 0.0;
};
CountingBound counting_bound(const SpectrumSpec& spec);
double counting_upper_bound(const SpectrumSpec& spec, double lambda);

// Building blocks, exposed for tests and benchmarks.

// Eigenvalues of -u'' on [0, L], lowest first, all <= lambda_max.
std::vector<double> interval_eigenvalues(double L, EndCondition left, EndCondition right, double lambda_max);

// j-th eigenvalue (0-based) of -u'' on [0, L] via the Pruefer angle.
double interval_eigenvalue(double L, EndCondition left, EndCondition right, std::size_t j);

// Unscaled Pruefer angle theta(L; lambda) with theta(0) = theta0 in [0, pi).
double pruefer_angle(double L, double theta0, double lambda);

// Positive zeros of J_nu below x_max for nu = 0, 1, ..., grouped by nu.
// Scanned with step <= 0.5 and refined by bracketing; interlacing checked.
std::vector<std::vector<double>> bessel_zeros(double x_max, bool parallel = true);

// McMahon large-k approximation of j_{nu,k}.
double mcmahon_zero(double nu, int k);

// Roots theta > 0 of theta tan(theta) = c, one per branch j >= 1 in
// ((j-1/2)pi, (j+1/2)pi), plus the branch-0 root in (0, pi/2) when c > 0.
// For c < 0 the branch-0 solution is the negative mode phi tanh(phi) = -c,
// returned separately.
struct EvenBranchRoots {
    std::vector<double> theta;      // increasing
    double negative_phi = 0.0;      // > 0 when c < 0, else 0
    bool zero_mode = false;         // c == 0: theta = 0 is a root
};
EvenBranchRoots theta_tan_roots(double c, double theta_max);

}  // namespace heatcoeff::oracle
