#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "heatcoeff/content_coeffs.hpp"
#include "heatcoeff/errors.hpp"
#include "heatcoeff/fit.hpp"
#include "heatcoeff/oracle/heat_content.hpp"
#include "heatcoeff/oracle/heat_trace.hpp"
#include "heatcoeff/rod.hpp"
#include "heatcoeff/trace_coeffs.hpp"

using namespace heatcoeff;
using std::numbers::pi;

namespace {

TraceSamples synth(const std::vector<double>& c, int shift, const std::vector<double>& ts) {
    TraceSamples s;
    for (double t : ts) {
        double v = 0.0;
        for (std::size_t n = 0; n < c.size(); ++n) v += c[n] * std::pow(t, (double(n) - shift) / 2.0);
        s.push_back({t, v, 0.0});
    }
    return s;
}

oracle::SpectrumSpec spec(oracle::Problem p, std::vector<double> params, double lambda_max = 0.0) {
    oracle::SpectrumSpec s;
    s.problem = p;
    s.params = std::move(params);
    s.lambda_max = lambda_max;
    return s;
}

TraceSamples sphere_samples(double t_min, double t_max) {
    return oracle::heat_trace_samples(spec(oracle::Problem::Sphere, {1.0}), geometric_grid(t_min, t_max, 40), 1e-15);
}

const std::vector<int> even_orders{0, 2, 4, 6, 8};

}  // namespace

TEST_CASE("geometric grid") {
    auto g = geometric_grid(1e-4, 1e-3, 40);
    REQUIRE(g.size() == 40);
    CHECK(g.front() == doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(g.back() == doctest::Approx(1e-3).epsilon(1e-15));
    for (std::size_t i = 2; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_grid(1e-3, 1e-4, 10), InvalidInput);
}

TEST_CASE("exact model is recovered") {
    auto ts = geometric_grid(1e-4, 1e-3, 40);
    auto r = fit_trace(synth({2.0, -0.5, 0.1}, 1, ts), 1, 2);
    CHECK(std::abs(r.coefficients[0] - 2.0) < 1e-12);
    CHECK(std::abs(r.coefficients[1] + 0.5) < 1e-12);
    CHECK(std::abs(r.coefficients[2] - 0.1) < 1e-12);
    CHECK(r.trusted);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int trial = 0; trial < 20; ++trial) {
        const int n_max = 2 + trial % 5;
        const int shift = trial % 3;
        std::vector<double> c(n_max + 1);
        for (double& x : c) x = U(rng);
        auto s = synth(c, shift, geometric_grid(1e-3, 1e-2, 3 * (n_max + 1)));
        auto f = fit_half_powers(s, shift, n_max);
        // measured in the column-scaled variables the solver works in:
        // |dc_n| |column_n| relative to |y|, rows weighted by t^(shift/2)
        double ynorm = 0.0;
        std::vector<double> col(n_max + 1, 0.0);
        for (const auto& x : s) {
            ynorm += std::pow(x.value * std::pow(x.t, shift / 2.0), 2);
            for (int n = 0; n <= n_max; ++n) col[n] += std::pow(x.t, n);
        }
        ynorm = std::sqrt(ynorm);
        for (int n = 0; n <= n_max; ++n) {
            CAPTURE(trial);
            CAPTURE(n);
            CHECK(std::abs(f.coefficients[n] - c[n]) * std::sqrt(col[n]) <= 1e3 * eps * f.condition_estimate * ynorm);
        }
    }
}

TEST_CASE("interval Dirichlet trace fit") {
    auto s = oracle::heat_trace_samples(spec(oracle::Problem::Interval, {1.0}), geometric_grid(1e-4, 1e-3, 40));
    auto r = fit_trace(s, 1, 3);
    CHECK(std::abs(r.coefficients[0] - 0.5 / std::sqrt(pi)) < 1e-8);
    CHECK(std::abs(r.coefficients[1] + 0.5) < 1e-7);
    CHECK(std::abs(r.coefficients[2]) < 1e-6);
    CHECK(std::abs(r.coefficients[3]) < 1e-6);
    CHECK(r.trusted);
}

TEST_CASE("sphere trace fit") {
    auto r = fit_trace(sphere_samples(3e-3, 3e-2), 2, 8, even_orders);
    CHECK(std::abs(r.coefficients[0] - 1.0) < 1e-6);
    CHECK(std::abs(r.coefficients[2] - 1.0 / 3.0) < 1e-6);
    CHECK(std::abs(r.coefficients[4] - 1.0 / 15.0) < 1e-4);
    CHECK(r.coefficients[1] == 0.0);
    CHECK_FALSE(r.fitted[1]);
}

TEST_CASE("content fits") {
    auto ts = geometric_grid(1e-4, 1e-3, 40);
    SUBCASE("rod Dirichlet") {
        TraceSamples s;
        for (double t : ts) s.push_back(oracle::rod_dirichlet_content(1.0, t));
        auto r = fit_content(s, 4);
        CHECK(std::abs(r.coefficients[0] - 1.0) < 1e-10);
        CHECK(std::abs(r.coefficients[1] + 4.0 / std::sqrt(pi)) < 1e-7);
        for (int n = 2; n <= 4; ++n) CHECK(std::abs(r.coefficients[n]) < 1e-6);
    }
    SUBCASE("equilibrium") {
        // the content is constant for all t, so any window is admissible; one
        // with O(1) columns keeps rounding below 1e-12 in every coefficient
        TraceSamples s;
        for (double t : geometric_grid(0.1, 1.0, 40)) s.push_back({t, 1.7, 0.0});
        auto r = fit_content(s, 4);
        CHECK(std::abs(r.coefficients[0] - 1.7) < 1e-12);
        for (int n = 1; n <= 4; ++n) CHECK(std::abs(r.coefficients[n]) < 1e-12);
    }
    SUBCASE("Robin rod against the formula") {
        RodProblem rod;
        rod.left = rod.right = {BoundaryKind::Robin, 1.0, 0.0, 0.0};
        auto s = oracle::rod_content_samples(rod, geometric_grid(1e-3, 1e-2, 24));
        auto r = fit_content(s, 7);
        auto setup = rod_content_setup(rod);
        const double b2 = heat_content_coefficient(2, setup.cat.geometry, setup.cat.boundary, setup.data).value;
        CHECK(std::abs(r.coefficients[2] - b2) < 1e-5);
    }
}

TEST_CASE("window stability") {
    // halving t_max moves trusted coefficients by less than their reported uncertainty
    SUBCASE("sphere") {
        auto wide = fit_trace(sphere_samples(3e-3, 3e-2), 2, 8, even_orders);
        auto narrow = fit_trace(sphere_samples(3e-3, 1.5e-2), 2, 8, even_orders);
        REQUIRE(wide.trusted);
        REQUIRE(narrow.trusted);
        for (int n : {0, 2, 4}) {
            CAPTURE(n);
            CHECK(std::abs(wide.coefficients[n] - narrow.coefficients[n]) <
                  std::max(wide.uncertainty[n], narrow.uncertainty[n]));
        }
    }
    SUBCASE("disk") {
        auto s = spec(oracle::Problem::Disk, {1.0}, 4e4);
        auto wide = fit_trace(oracle::heat_trace_samples(s, geometric_grid(1e-3, 1e-2, 40), 1e-12), 2, 7);
        auto narrow = fit_trace(oracle::heat_trace_samples(s, geometric_grid(1e-3, 5e-3, 40), 1e-12), 2, 7);
        for (int n : {0, 1, 2}) {
            CAPTURE(n);
            CHECK(std::abs(wide.coefficients[n] - narrow.coefficients[n]) <
                  std::max(wide.uncertainty[n], narrow.uncertainty[n]));
        }
    }
}

TEST_CASE("a larger model never worsens the residual") {
    auto s = oracle::heat_trace_samples(spec(oracle::Problem::Disk, {1.0}, 4e4), geometric_grid(1e-3, 1e-2, 40), 1e-12);
    double prev = 1e300;
    for (int n_max = 2; n_max <= 7; ++n_max) {
        auto r = fit_trace(s, 2, n_max);
        CHECK(r.residual_norm <= prev * (1.0 + 1e-12));
        prev = r.residual_norm;
    }
}

TEST_CASE("sequential extraction agrees with the joint fit") {
    auto s = oracle::heat_trace_samples(spec(oracle::Problem::Interval, {1.0}), geometric_grid(1e-4, 1e-3, 40));
    auto joint = fit_trace(s, 1, 3);
    auto seq = sequential_extract(s, 1, 3);
    for (int n = 0; n <= 1; ++n) {
        CHECK(std::abs(joint.coefficients[n] - seq.coefficients[n]) <= joint.uncertainty[n] + seq.uncertainty[n] + 1e-9);
    }
    auto sph = sphere_samples(3e-3, 3e-2);
    auto sj = fit_trace(sph, 2, 8, even_orders);
    auto ss = sequential_extract(sph, 2, 8, even_orders);
    for (int n : {0, 2, 4}) {
        CAPTURE(n);
        CHECK(std::abs(sj.coefficients[n] - ss.coefficients[n]) <= sj.uncertainty[n] + ss.uncertainty[n]);
    }
}

TEST_CASE("fit errors and the untrusted flag") {
    auto ts = geometric_grid(1e-4, 1e-3, 40);
    auto good = synth({1.0, 2.0, 3.0}, 1, ts);
    CHECK_THROWS_AS(fit_trace(TraceSamples(good.begin(), good.begin() + 5), 1, 2), InvalidInput);
    CHECK_THROWS_AS(fit_trace(synth({1.0}, 1, geometric_grid(1e-4, 1e-2, 40)), 1, 2), InvalidInput);
    CHECK_THROWS_AS(fit_trace(good, 1, 2, std::vector<int>{5}), InvalidInput);
    CHECK_THROWS_AS(fit_trace(good, 0, 2), InvalidInput);

    TraceSamples same;
    for (int i = 0; i < 10; ++i) same.push_back({1e-3, 1.0, 0.0});
    CHECK_THROWS_AS(fit_trace(same, 1, 2), NumericalFailure);

    auto r = fit_trace(synth({1.0, 2.0, 3.0}, 1, geometric_grid(1e-3, 2e-3, 60)), 1, 9);
    CHECK_FALSE(r.trusted);
    CHECK(r.condition_estimate > kTrustedCondition);
}

TEST_CASE("disk with D(t) = -(1 + gamma t) Laplacian through exact time rescaling") {
    // the heat trace is the static one at s = t + gamma t^2 / 2; data built here, not by the oracle
    const double gamma = 0.3;
    auto s = spec(oracle::Problem::Disk, {1.0}, 4e4);
    TraceSamples samples;
    for (double t : geometric_grid(1e-3, 1e-2, 40)) {
        auto x = oracle::heat_trace(s, t + 0.5 * gamma * t * t, 1e-12);
        samples.push_back({t, x.value, x.bound});
    }
    auto f = fit_trace(samples, 2, 7);
    auto cat = catalog_geometry("disk", std::vector<double>{1.0});
    TimePerturbation tp;
    tp.G1_ii = -2.0 * gamma;
    tp.G1_ij_sq = 2.0 * gamma * gamma;
    tp.G1_aa = -gamma;
    tp.G1_mm = -gamma;
    tp.G1_ab_Lab = -gamma * cat.boundary[0].Laa;
    const double tol[] = {1e-9, 1e-7, 1e-6, 1e-4, 1e-3};
    for (int n = 0; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(std::abs(f.coefficients[n] - trace_coefficient(n, cat, tp).value) < tol[n]);
    }
    // the a_3 shift is -gamma a_1 / 4
    CHECK(trace_coefficient(3, cat, tp).value - trace_coefficient(3, cat).value ==
          doctest::Approx(-gamma * trace_coefficient(1, cat).value / 4.0).epsilon(1e-13));
}
