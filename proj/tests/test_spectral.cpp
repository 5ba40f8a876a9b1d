#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spectral_transcription.hpp"

#include "heatcoeff/errors.hpp"
#include "heatcoeff/spectral.hpp"
#include "heatcoeff/trace_coeffs.hpp"

using namespace heatcoeff;
using std::numbers::pi;

namespace {

GeometryInvariants flat(int m, double volume = 1.0) {
    GeometryInvariants g;
    g.m = m;
    g.regions.push_back({.measure = volume});
    return g;
}

double boundary_only(int n, const SpectralBCData& d, const SmearingJets& f, const GeometryInvariants& g) {
    auto r = spectral_coefficient(n, d, f, g);
    double v = 0.0;
    for (const auto& p : r.parts) {
        if (p.label.rfind("boundary", 0) == 0) v += p.value;
    }
    return v;
}

}  // namespace

TEST_CASE("C(m) against the gamma function") {
    for (int m = 4; m <= 8; ++m) {
        CHECK(std::abs(clifford_constant(m).value() - transcription::C(m)) < 1e-14);
    }
    CHECK(clifford_constant(4).value() == doctest::Approx(4.0 / (3.0 * pi)).epsilon(1e-15));
    CHECK(clifford_constant(4).value() == doctest::Approx(0.4244131816).epsilon(1e-10));
    CHECK(clifford_constant(4).pi_power == -1);
    CHECK(clifford_constant(5).pi_power == 0);
}

TEST_CASE("a_1 for flat m = 4 with vanishing psi and Theta") {
    for (int size : {2, 4}) {
        SpectralBCData d;
        d.m = 4;
        d.gammas = transcription::clifford_generators(3, size);
        d.psi_hat = Eigen::MatrixXcd::Zero(size, size);
        d.theta = Eigen::MatrixXcd::Zero(size, size);
        d.boundary_measure = 2.5;
        const double expect = std::pow(4 * pi, -1.5) * 0.25 * (4.0 / (3.0 * pi) - 1.0) * 2.5 * size;
        CHECK(spectral_coefficient(1, d, {}, flat(4)).value == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("psi_hat = c I example") {
    const double c = 0.7;
    SpectralBCData d;
    d.m = 4;
    d.gammas = transcription::clifford_generators(3, 2);
    d.psi_hat = c * Eigen::MatrixXcd::Identity(2, 2);
    d.theta = Eigen::MatrixXcd::Zero(2, 2);
    d.boundary_measure = 1.0;
    // gamma psi gamma psi summed over a = -(m - 1) c^2 I
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2, 2);
    for (const auto& g : d.gammas) acc += g * d.psi_hat * g * d.psi_hat;
    CHECK((acc + 3.0 * c * c * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
    const double got = boundary_only(3, d, {}, flat(4));
    CHECK(std::abs(got - transcription::spectral_boundary(3, d, 1.0, 0.0, 0.0)) < 1e-12);
}

TEST_CASE("agreement with the second transcription on randomized inputs") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 4 + trial % 3;
        auto d = transcription::random_data(rng, m);
        SmearingJets f{.f = 1.0 + U(rng), .f_m = U(rng), .f_mm = U(rng)};
        auto g = flat(m, 1.0 + std::abs(U(rng)));
        for (int n = 1; n <= 3; ++n) {
            const double mine = boundary_only(n, d, f, g);
            const double other = transcription::spectral_boundary(n, d, f.f, f.f_m, f.f_mm);
            CAPTURE(trial);
            CAPTURE(n);
            CHECK(std::abs(mine - other) <= 1e-12 * std::max(1.0, std::abs(other)));
        }
        // a_0 and the interior part of a_2 come from the interior evaluator with fiber dim d
        GeometryInvariants gi = g;
        gi.regions[0].fiber_dim = static_cast<int>(d.psi_hat.rows());
        CHECK(spectral_coefficient(0, d, f, g).value == doctest::Approx(interior_coefficient(0, gi, f).value));
    }
}

TEST_CASE("normalized a_1 depends on the dimension") {
    auto value = [](int m) {
        SpectralBCData d;
        d.m = m;
        d.gammas = transcription::clifford_generators(m - 1, 4);
        d.psi_hat = Eigen::MatrixXcd::Zero(4, 4);
        d.theta = Eigen::MatrixXcd::Zero(4, 4);
        d.boundary_measure = 1.0;
        auto r = spectral_coefficient(1, d, {}, flat(m));
        return r.value / r.normalization;
    };
    CHECK(std::abs(value(4) - value(5)) > 1e-3);
}

TEST_CASE("input validation") {
    std::mt19937_64 rng(7);
    auto d = transcription::random_data(rng, 5);
    CHECK_NOTHROW(validate(d));

    auto bad = d;
    bad.gammas[1](0, 1) += 1e-8;
    bad.gammas[1](1, 0) -= 1e-8;  // still skew-adjoint, no longer Clifford
    CHECK_THROWS_AS(validate(bad), InvalidInput);

    auto scaled = d;
    scaled.gammas[2] *= 1.0 + 1e-9;
    CHECK_THROWS_AS(validate(scaled), InvalidInput);

    auto theta = d;
    theta.theta(0, 1) += std::complex<double>(0.0, 1e-6);
    CHECK_THROWS_AS(validate(theta), InvalidInput);

    auto wrong_sign = d;
    for (auto& g : wrong_sign.gammas) g *= std::complex<double>(0, 1);  // squares to +1
    CHECK_THROWS_AS(validate(wrong_sign), InvalidInput);

    auto low = d;
    low.m = 3;
    low.gammas.resize(2);
    CHECK_THROWS_AS(validate(low), InvalidInput);
    CHECK_THROWS_AS(spectral_coefficient(1, low, {}, flat(3)), InvalidInput);

    CHECK_THROWS_AS(spectral_coefficient(4, d, {}, flat(5)), UnsupportedOrder);
    CHECK_THROWS_AS(spectral_coefficient(1, d, {}, flat(4)), InvalidInput);
}
