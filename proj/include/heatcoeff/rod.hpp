#pragma once

#include <functional>
#include <vector>

#include "heatcoeff/content_coeffs.hpp"
#include "heatcoeff/geometry.hpp"

namespace heatcoeff {

// Closed-form 1-D profile: polynomial plus a finite sum of a cos(wx) + b sin(wx).
class Profile {
public:
    struct Trig {
        double a_cos = 0.0;
        double b_sin = 0.0;
        double omega = 0.0;
    };

    Profile() = default;
    Profile(double constant);  // NOLINT(implicit)
    static Profile polynomial(std::vector<double> coefficients);  // c0 + c1 x + ...

    Profile& add_trig(double a_cos, double b_sin, double omega);

    // k-th derivative at x, k >= 0
    double operator()(double x, int k = 0) const;
    bool is_zero() const;

    const std::vector<double>& poly() const { return poly_; }
    const std::vector<Trig>& trig() const { return trig_; }

private:
    std::vector<double> poly_;
    std::vector<Trig> trig_;
};

// Adaptive Gauss-Kronrod quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

struct RodEnd {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double S = 0.0;
    double psi0 = 0.0;  // boundary data psi = psi0 + t psi1
    double psi1 = 0.0;
};

// u_t = u'' + E(x) u - t (G1 u'' + F1 u' + E1 u) + p0(x) + t p1(x) on [0, L],
// u(x, 0) = phi, Dirichlet u = psi or Robin u_;m + S u = psi at each end
// (inward normal: +d/dx at 0, -d/dx at L). Heat content int u rho.
struct RodProblem {
    double L = 1.0;
    Profile phi = 1.0;
    Profile rho = 1.0;
    Profile E = 0.0;
    Profile p0 = 0.0;
    Profile p1 = 0.0;
    RodEnd left, right;
    double G1 = 0.0;
    double F1 = 0.0;
    double E1 = 0.0;

    void validate() const;
    TimePerturbation time_perturbation() const;  // interior constants; boundary fields per end
};

struct RodContentSetup {
    CatalogGeometry cat;  // interval with per-end kinds, S, E_b, E_m and time data
    HeatContentData data;
    TimePerturbation tp;
};

// Generates every pairing consumed by the heat content coefficients from the profiles.
RodContentSetup rod_content_setup(const RodProblem& rod);

}  // namespace heatcoeff
