#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "heatcoeff/content_coeffs.hpp"
#include "heatcoeff/errors.hpp"
#include "heatcoeff/oracle/heat_content.hpp"
#include "heatcoeff/rod.hpp"

using namespace heatcoeff;
using std::numbers::pi;

namespace {

double beta(int n, const RodProblem& r) {
    auto s = rod_content_setup(r);
    return heat_content_coefficient(n, s.cat.geometry, s.cat.boundary, s.data, s.tp).value;
}

RodProblem busy_rod() {
    RodProblem r;
    r.L = 1.3;
    r.phi = Profile::polynomial({0.7, 0.4, -0.3});
    r.phi.add_trig(0.2, 0.1, 2.0);
    r.rho = Profile::polynomial({1.1, -0.2});
    r.rho.add_trig(0.0, 0.3, 1.5);
    r.E = Profile::polynomial({0.3, 0.2});
    r.p0 = Profile::polynomial({0.5, 0.1});
    r.p1 = 0.4;
    r.left = {BoundaryKind::Dirichlet, 0.0, 0.2, 0.3};
    r.right = {BoundaryKind::Robin, 0.8, 0.1, -0.2};
    return r;
}

// log-log slope of |CN - sum_{n<=4} beta_n t^(n/2)| between t and t/2
double residual_slope(const RodProblem& r, double t) {
    double b[5];
    for (int n = 0; n <= 4; ++n) b[n] = beta(n, r);
    auto residual = [&](double s) {
        double model = 0.0;
        for (int n = 0; n <= 4; ++n) model += b[n] * std::pow(s, n / 2.0);
        oracle::CnOptions opt;
        opt.N = 400;
        return std::abs(oracle::rod_content_cn(r, s, opt).value - model);
    };
    return std::log(residual(t) / residual(t / 2)) / std::log(2.0);
}

}  // namespace

TEST_CASE("rod Dirichlet examples") {
    for (double L : {1.0, 2.5}) {
        RodProblem r;
        r.L = L;
        CHECK(beta(0, r) == doctest::Approx(L).epsilon(1e-15));
        CHECK(beta(1, r) == doctest::Approx(-4.0 / std::sqrt(pi)).epsilon(1e-15));
        CHECK(beta(1, r) == doctest::Approx(-2.2567583342).epsilon(1e-10));
        CHECK(std::abs(beta(2, r)) < 1e-15);
        CHECK(std::abs(beta(3, r)) < 1e-15);
        CHECK(std::abs(beta(4, r)) < 1e-15);
    }
    RodProblem r;
    CHECK_THROWS_AS(beta(5, r), UnsupportedOrder);
}

TEST_CASE("equilibrium data has no dynamics") {
    // phi linear, D phi = 0, Dirichlet data matching phi, Robin data matching B phi
    RodProblem r;
    r.L = 1.7;
    r.phi = Profile::polynomial({0.4, 0.9});
    r.rho = Profile::polynomial({1.0, 0.3});
    r.rho.add_trig(0.2, -0.1, 2.5);
    r.left = {BoundaryKind::Dirichlet, 0.0, 0.4, 0.0};
    const double S = 0.6;
    // inward normal at x = L is -d/dx: B phi = -phi'(L) + S phi(L)
    r.right = {BoundaryKind::Robin, S, -0.9 + S * (0.4 + 0.9 * r.L), 0.0};
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(beta(n, r)) < 1e-14);
    CHECK(beta(0, r) == doctest::Approx(oracle::rod_content_cn(r, 0.01).value).epsilon(1e-8));
}

TEST_CASE("Neumann ends conserve heat") {
    RodProblem r;
    r.L = 0.9;
    r.left = {BoundaryKind::Robin, 0.0, 0.0, 0.0};
    r.right = r.left;
    for (int n = 1; n <= 4; ++n) CHECK(beta(n, r) == 0.0);
    CHECK(beta(0, r) == doctest::Approx(0.9));
}

TEST_CASE("bilinearity") {
    auto base = busy_rod();
    // linear in (p, phi, psi) jointly
    RodProblem a = base, b = base, sum = base;
    b.phi = Profile::polynomial({-0.3, 0.8});
    b.phi.add_trig(0.0, 0.5, 3.0);
    b.p0 = Profile::polynomial({0.2, -0.4, 0.1});
    b.p1 = -0.3;
    b.left.psi0 = -0.6;
    b.left.psi1 = 0.1;
    b.right.psi0 = 0.35;
    b.right.psi1 = 0.05;
    const double alpha = 1.4, gamma = -0.7;
    auto combine = [&](const Profile& x, const Profile& y) {
        std::vector<double> c(std::max(x.poly().size(), y.poly().size()), 0.0);
        for (std::size_t k = 0; k < x.poly().size(); ++k) c[k] += alpha * x.poly()[k];
        for (std::size_t k = 0; k < y.poly().size(); ++k) c[k] += gamma * y.poly()[k];
        Profile out = Profile::polynomial(c);
        for (const auto& t : x.trig()) out.add_trig(alpha * t.a_cos, alpha * t.b_sin, t.omega);
        for (const auto& t : y.trig()) out.add_trig(gamma * t.a_cos, gamma * t.b_sin, t.omega);
        return out;
    };
    sum.phi = combine(a.phi, b.phi);
    sum.p0 = combine(a.p0, b.p0);
    sum.p1 = combine(a.p1, b.p1);
    sum.left.psi0 = alpha * a.left.psi0 + gamma * b.left.psi0;
    sum.left.psi1 = alpha * a.left.psi1 + gamma * b.left.psi1;
    sum.right.psi0 = alpha * a.right.psi0 + gamma * b.right.psi0;
    sum.right.psi1 = alpha * a.right.psi1 + gamma * b.right.psi1;
    for (int n = 0; n <= 4; ++n) {
        CHECK(beta(n, sum) == doctest::Approx(alpha * beta(n, a) + gamma * beta(n, b)).epsilon(1e-11));
    }
    // linear in rho
    RodProblem r2 = base, rs = base;
    r2.rho = Profile::polynomial({0.3, 0.0, 0.5});
    rs.rho = combine(base.rho, r2.rho);
    for (int n = 0; n <= 4; ++n) {
        CHECK(beta(n, rs) == doctest::Approx(alpha * beta(n, base) + gamma * beta(n, r2)).epsilon(1e-11));
    }
}

TEST_CASE("duality: swapping phi and rho") {
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Robin}) {
        RodProblem r;
        r.L = 1.2;
        r.phi = Profile::polynomial({0.7, 0.4, -0.3});
        r.rho = Profile::polynomial({1.1, -0.2});
        r.rho.add_trig(0.1, 0.3, 1.5);
        r.E = Profile::polynomial({0.3, 0.2});
        r.left = {kind, 0.5, 0.0, 0.0};
        r.right = {BoundaryKind::Robin, -0.4, 0.0, 0.0};
        RodProblem s = r;
        std::swap(s.phi, s.rho);
        for (int n = 0; n <= 2; ++n) CHECK(beta(n, r) == doctest::Approx(beta(n, s)).epsilon(1e-12));
    }
}

TEST_CASE("constant field data on the disk") {
    auto disk = catalog_geometry("disk", std::vector<double>{1.0});
    auto d = constant_field_data(disk, 1.0, 1.0);
    CHECK(heat_content_coefficient(0, disk.geometry, disk.boundary, d).value == doctest::Approx(pi));
    CHECK(heat_content_coefficient(1, disk.geometry, disk.boundary, d).value ==
          doctest::Approx(-2.0 / std::sqrt(pi) * 2.0 * pi));
}

TEST_CASE("Crank-Nicolson residual shrinks like t^(5/2)") {
    SUBCASE("static") { CHECK(residual_slope(busy_rod(), 1e-3) >= 2.4); }
    SUBCASE("time dependent") {
        auto r = busy_rod();
        r.G1 = 0.2;
        r.F1 = 0.1;
        r.E1 = 0.3;
        CHECK(residual_slope(r, 1e-3) >= 2.4);
    }
}

TEST_CASE("time-dependent beta_3 follows the rescaling of (1 + gamma t) D") {
    // D(t) = (1 - G1 t) D: the content is the static one at s = t - G1 t^2 / 2,
    // so the t^(3/2) coefficient moves by -beta_1 G1 / 4
    RodProblem r;
    r.L = 1.0;
    r.phi = Profile::polynomial({0.7, 0.4});
    RodProblem timed = r;
    timed.G1 = 0.25;
    CHECK(beta(3, timed) - beta(3, r) == doctest::Approx(-beta(1, r) * 0.25 / 4.0).epsilon(1e-13));
}
