#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "heatcoeff/errors.hpp"
#include "heatcoeff/trace_coeffs.hpp"

using namespace heatcoeff;
using std::numbers::pi;

namespace {

CatalogGeometry cat(const char* name, std::vector<double> p) { return catalog_geometry(name, p); }

double a(int n, const CatalogGeometry& c, const TimePerturbation& tp = {}, const SmearingJets& f = {}) {
    return trace_coefficient(n, c, tp, f).value;
}

double sum_parts(const CoefficientReport& r) {
    double s = 0.0;
    for (const auto& p : r.parts) s += p.value;
    return s;
}

// Generic data with every invariant switched on, for structural properties.
GeometryInvariants busy_interior(int m) {
    GeometryInvariants g;
    g.m = m;
    g.regions.push_back({.measure = 1.3, .tau = 0.7, .rho_sq = 0.4, .riem_sq = 0.9, .tau_lap = 0.11, .fiber_dim = 2,
                         .E = -0.35, .E_lap = 0.21, .omega_sq = -0.17});
    return g;
}

BoundaryComponentData busy_component(BoundaryKind kind) {
    BoundaryComponentData c;
    c.kind = kind;
    c.label = "busy";
    c.measure = 2.1;
    c.fiber_dim = 2;
    c.Laa = 0.6;
    c.LabLab = 0.3;
    c.LaaLbb = 0.36;
    c.LaaLbbLcc = 0.2;
    c.LabLabLcc = 0.15;
    c.LabLbcLac = 0.05;
    c.Laa_bb = 0.03;
    c.Lab_ab = 0.02;
    c.tau = 0.7;
    c.rho_mm = 0.25;
    c.R_ambm_Lab = 0.04;
    c.R_abcb_Lac = -0.06;
    c.tau_m = 0.08;
    c.E_b = -0.35;
    c.E_m = 0.12;
    c.S = kind == BoundaryKind::Robin ? 0.45 : 0.0;
    c.S_aa = kind == BoundaryKind::Robin ? 0.07 : 0.0;
    return c;
}

CatalogGeometry disjoint_union(const CatalogGeometry& x, const CatalogGeometry& y) {
    CatalogGeometry u = x;
    u.geometry.regions.insert(u.geometry.regions.end(), y.geometry.regions.begin(), y.geometry.regions.end());
    u.boundary.insert(u.boundary.end(), y.boundary.begin(), y.boundary.end());
    return u;
}

}  // namespace

TEST_CASE("interior examples") {
    auto interval = cat("interval", {1.0});
    CHECK(interior_coefficient(0, interval.geometry).value == doctest::Approx(0.2820947918).epsilon(1e-10));
    CHECK(interior_coefficient(0, interval.geometry).value == doctest::Approx(0.5 / std::sqrt(pi)).epsilon(1e-15));

    auto s2 = cat("sphere", {1.0});
    CHECK(interior_coefficient(2, s2.geometry).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(interior_coefficient(4, s2.geometry).value == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
    CHECK(interior_coefficient(0, s2.geometry).value == doctest::Approx(1.0).epsilon(1e-14));

    const double L = 2.3, V = 0.7;
    auto circle = cat("circle", {L});
    set_potential(circle, V);
    CHECK(interior_coefficient(2, circle.geometry).value ==
          doctest::Approx(-V * L / (2.0 * std::sqrt(pi))).epsilon(1e-14));
}

TEST_CASE("odd interior orders vanish and a_5 is refused") {
    auto g = busy_interior(3);
    CHECK(interior_coefficient(1, g).value == 0.0);
    CHECK(interior_coefficient(3, g).value == 0.0);
    CHECK_THROWS_AS(interior_coefficient(5, g), UnsupportedOrder);
    CHECK_THROWS_AS(interior_coefficient(6, g), UnsupportedOrder);
}

TEST_CASE("boundary examples") {
    auto interval = cat("interval", {1.0});
    CHECK(boundary_coefficient(1, interval.geometry, interval.boundary).value == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(boundary_coefficient(0, interval.geometry, interval.boundary).value == 0.0);
    auto neumann = interval;
    set_boundary_kind(neumann, BoundaryKind::Robin, 0.0);
    CHECK(boundary_coefficient(1, neumann.geometry, neumann.boundary).value == doctest::Approx(0.5).epsilon(1e-15));

    auto disk = cat("disk", {1.0});
    CHECK(a(1, disk) == doctest::Approx(-0.4431134627).epsilon(1e-10));
    CHECK(a(1, disk) == doctest::Approx(-std::sqrt(pi) / 4.0).epsilon(1e-15));
    CHECK(a(2, disk) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    auto hd = cat("hemisphere", {1.0});
    CHECK(a(3, hd) == doctest::Approx(-0.1107783657).epsilon(1e-10));
    CHECK(a(3, hd) == doctest::Approx(-std::sqrt(pi) / 16.0).epsilon(1e-14));
    CHECK(a(4, hd) == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    auto hn = hd;
    set_boundary_kind(hn, BoundaryKind::Robin, 0.0);
    CHECK(a(3, hn) == doctest::Approx(std::sqrt(pi) / 16.0).epsilon(1e-14));

    auto robin = cat("interval", {1.0});
    set_boundary_kind(robin, BoundaryKind::Robin, 1.0);
    CHECK(boundary_coefficient(2, robin.geometry, robin.boundary).value ==
          doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(boundary_coefficient(2, robin.geometry, robin.boundary).value ==
          doctest::Approx(1.1283791671).epsilon(1e-10));
}

TEST_CASE("boundary_coefficient rejects junctions and high orders") {
    auto disk = cat("disk", {1.0});
    CHECK_THROWS_AS(boundary_coefficient(5, disk.geometry, disk.boundary), UnsupportedOrder);
    split_dirichlet_neumann(disk, 0, 2.0);
    CHECK_THROWS_AS(boundary_coefficient(2, disk.geometry, disk.boundary), InvalidInput);
}

TEST_CASE("transmittal examples") {
    for (double Xi : {0.5, 1.0, 2.0, -0.8}) {
        auto dc = cat("delta_circle", {2.0 * pi, Xi});
        const auto& td = *dc.boundary.at(0).interface;
        CHECK(transmittal_coefficient(0, dc.geometry, td).value == 0.0);
        CHECK(transmittal_coefficient(1, dc.geometry, td).value == 0.0);
        CHECK(transmittal_coefficient(2, dc.geometry, td).value ==
              doctest::Approx(-Xi / (2.0 * std::sqrt(pi))).epsilon(1e-14));
        CHECK(transmittal_coefficient(3, dc.geometry, td).value == doctest::Approx(Xi * Xi / 8.0).epsilon(1e-14));
        CHECK_THROWS_AS(transmittal_coefficient(4, dc.geometry, td), UnsupportedOrder);
    }
}

TEST_CASE("smooth gluing is invisible, exactly") {
    for (int m : {2, 3, 5}) {
        GeometryInvariants g = busy_interior(m);
        auto td = smooth_gluing(1.7, 0.6, 0.3);
        SmearingJets f{.f = 1.3, .f_m = 0.4, .f_mm = -0.2, .f_iim = 0.1};
        td.fjet_plus = 0.4;
        td.fjet_minus = -0.4;
        for (int n = 0; n <= 3; ++n) CHECK(transmittal_coefficient(n, g, td, f).value == 0.0);
    }
}

TEST_CASE("time-dependent interior examples") {
    const double L = 2.0 * pi, gamma = 0.3, eps = 0.5;
    auto circle = cat("circle", {L});
    TimePerturbation tg;
    tg.G1_ii = -gamma;
    tg.G1_ij_sq = gamma * gamma;
    const double s0 = interior_coefficient(2, circle.geometry).value;
    CHECK(time_dependent_interior(2, circle.geometry, tg).value - s0 ==
          doctest::Approx(-gamma * L / (8.0 * std::sqrt(pi))).epsilon(1e-13));
    const double s4 = interior_coefficient(4, circle.geometry).value;
    CHECK(time_dependent_interior(4, circle.geometry, tg).value - s4 ==
          doctest::Approx(3.0 * gamma * gamma * L / (64.0 * std::sqrt(pi))).epsilon(1e-13));
    TimePerturbation te;
    te.E1 = eps;
    CHECK(time_dependent_interior(4, circle.geometry, te).value - s4 ==
          doctest::Approx(-eps * L / (4.0 * std::sqrt(pi))).epsilon(1e-13));
    CHECK(time_dependent_interior(0, circle.geometry, tg).value == interior_coefficient(0, circle.geometry).value);
    CHECK_THROWS_AS(time_dependent_interior(3, circle.geometry, tg), InvalidInput);
}

TEST_CASE("time-dependent boundary examples") {
    auto disk = cat("disk", {1.0});
    set_boundary_kind(disk, BoundaryKind::Robin, 0.3);
    for (int n = 0; n <= 4; ++n) {
        CHECK(time_dependent_boundary(n, disk.geometry, disk.boundary, {}).value ==
              boundary_coefficient(n, disk.geometry, disk.boundary).value);
    }

    auto interval = cat("interval", {1.0});
    TimePerturbation tp;
    tp.G1_ii = tp.G1_mm = -0.3;
    tp.G1_aa = 5.0;  // no tangential directions in m = 1
    CHECK(time_dependent_boundary(3, interval.geometry, interval.boundary, tp).value ==
          boundary_coefficient(3, interval.geometry, interval.boundary).value);

    TimePerturbation big;
    big.G1_aa = 0.7;
    big.G1_mm = -0.4;
    for (int n = 0; n <= 2; ++n) {
        CHECK(time_dependent_boundary(n, disk.geometry, disk.boundary, big).value ==
              boundary_coefficient(n, disk.geometry, disk.boundary).value);
    }
}

TEST_CASE("time-dependent a_4 boundary against a second transcription") {
    // m = 2 so the tangential terms are live; both kinds, all fields and jets on
    GeometryInvariants g = busy_interior(2);
    g.regions[0].fiber_dim = 1;
    TimePerturbation tp;
    tp.G1_aa = 0.31;
    tp.G1_mm = -0.27;
    tp.G1_ab_Lab = 0.13;
    tp.G1_mm_m = 0.09;
    tp.G1_aa_m = -0.05;
    tp.G1_am_a = 11.0;
    tp.F1_m = 0.22;
    tp.S1 = -0.16;
    SmearingJets f{.f = 1.2, .f_m = 0.35};
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Robin}) {
        auto c = busy_component(kind);
        c.fiber_dim = 1;
        std::vector<BoundaryComponentData> comps{c};
        const double corr = time_dependent_boundary(4, g, comps, tp, f).value - boundary_coefficient(4, g, comps, f).value;
        double x;
        if (kind == BoundaryKind::Dirichlet) {
            x = f.f * (30 * tp.G1_aa * c.Laa - 60 * tp.G1_mm * c.Laa + 30 * tp.G1_ab_Lab + 30 * tp.G1_mm_m -
                       30 * tp.G1_aa_m - 30 * tp.F1_m) +
                f.f_m * (-45 * tp.G1_aa + 45 * tp.G1_mm);
        } else {
            x = f.f * (30 * tp.G1_aa * c.Laa + 120 * tp.G1_mm * c.Laa - 150 * tp.G1_ab_Lab - 60 * tp.G1_mm_m +
                       60 * tp.G1_aa_m + 150 * tp.F1_m + 180 * c.S * tp.G1_aa - 180 * c.S * tp.G1_mm + 360 * tp.S1) +
                f.f_m * (45 * tp.G1_aa - 45 * tp.G1_mm);
        }
        x *= c.measure / (360.0 * 4.0 * pi);
        CHECK(corr == doctest::Approx(x).epsilon(1e-13));

        const double c3 = time_dependent_boundary(3, g, comps, tp, f).value - boundary_coefficient(3, g, comps, f).value;
        const double x3 = f.f * (kind == BoundaryKind::Dirichlet ? -24 : 24) * tp.G1_aa / 384.0 * c.measure /
                          std::sqrt(4.0 * pi);
        CHECK(c3 == doctest::Approx(x3).epsilon(1e-13));
    }
}

TEST_CASE("D/N junction") {
    auto disk = cat("disk", {1.0});
    split_dirichlet_neumann(disk, 0, 2.0);
    const BoundaryComponentData* j = nullptr;
    for (const auto& c : disk.boundary) {
        if (c.kind == BoundaryKind::DNJunction) j = &c;
    }
    REQUIRE(j != nullptr);
    auto r2 = dn_coefficient(2, disk.geometry, *j);
    CHECK(r2.value == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(r2.conjectural);
    CHECK(dn_coefficient(1, disk.geometry, *j).value == 0.0);
    CHECK(dn_coefficient(0, disk.geometry, *j).value == 0.0);
    CHECK_THROWS_AS(dn_coefficient(3, disk.geometry, *j), NotLocallyComputable);
    CHECK_THROWS_AS(trace_coefficient(3, disk), NotLocallyComputable);
    CHECK(trace_coefficient(2, disk).conjectural);
}

TEST_CASE("report parts sum to the value") {
    auto d = cat("disk", {1.0});
    set_boundary_kind(d, BoundaryKind::Robin, 0.4);
    set_potential(d, 0.3);
    for (int n = 0; n <= 4; ++n) {
        auto r = trace_coefficient(n, d);
        CHECK(r.value == sum_parts(r));
        CHECK(r.normalization_twice_exponent == trace_normalization_twice_exponent(n, 2));
    }
}

TEST_CASE("normalized coefficients do not depend on the dimension") {
    SmearingJets f{.f = 0.8, .f_m = 0.3, .f_mm = -0.4, .f_iim = 0.25};
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Robin}) {
        for (int n = 0; n <= 4; ++n) {
            std::vector<double> interior, boundary;
            for (int m = 2; m <= 6; ++m) {
                auto g = busy_interior(m);
                std::vector<BoundaryComponentData> comps{busy_component(kind)};
                auto ri = interior_coefficient(n, g, f);
                auto rb = boundary_coefficient(n, g, comps, f);
                interior.push_back(ri.value / ri.normalization);
                boundary.push_back(rb.value / rb.normalization);
            }
            for (std::size_t k = 1; k < interior.size(); ++k) {
                CHECK(interior[k] == doctest::Approx(interior[0]).epsilon(1e-13));
                CHECK(boundary[k] == doctest::Approx(boundary[0]).epsilon(1e-13));
            }
        }
    }
    TransmittalData td{.measure = 1.4, .Xi = 0.6, .Lp_aa = 0.3, .Lm_aa = 0.1, .Lp_ab_sq = 0.2, .Lm_ab_sq = 0.05,
                       .Lpm_aa_bb = 0.03, .Lpm_ab_ab = 0.02, .omega_sq = 0.4, .fjet_plus = 0.2, .fjet_minus = -0.1};
    for (int n = 0; n <= 3; ++n) {
        std::vector<double> vals;
        for (int m = 2; m <= 6; ++m) {
            auto r = transmittal_coefficient(n, busy_interior(m), td, f);
            vals.push_back(r.value / r.normalization);
        }
        for (double v : vals) CHECK(v == doctest::Approx(vals[0]).epsilon(1e-13));
    }
}

TEST_CASE("linearity in the smearing jets") {
    SmearingJets f1{.f = 0.8, .f_m = 0.3, .f_mm = -0.4, .f_iim = 0.25};
    SmearingJets f2{.f = -0.5, .f_m = 1.1, .f_mm = 0.6, .f_iim = -0.7};
    const double alpha = 1.7, beta = -0.6;
    SmearingJets fs{.f = alpha * f1.f + beta * f2.f,
                    .f_m = alpha * f1.f_m + beta * f2.f_m,
                    .f_mm = alpha * f1.f_mm + beta * f2.f_mm,
                    .f_iim = alpha * f1.f_iim + beta * f2.f_iim};
    auto g = busy_interior(3);
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Robin}) {
        std::vector<BoundaryComponentData> comps{busy_component(kind)};
        for (int n = 0; n <= 4; ++n) {
            const double lhs = boundary_coefficient(n, g, comps, fs).value;
            const double rhs =
                alpha * boundary_coefficient(n, g, comps, f1).value + beta * boundary_coefficient(n, g, comps, f2).value;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            const double li = interior_coefficient(n, g, fs).value;
            const double ri = alpha * interior_coefficient(n, g, f1).value + beta * interior_coefficient(n, g, f2).value;
            CHECK(li == doctest::Approx(ri).epsilon(1e-12));
        }
    }
}

TEST_CASE("dependence on E: affine up to a_3, quadratic at a_4") {
    // third finite difference in E vanishes for every order; second too for n <= 3
    auto with_E = [](double E, int n, BoundaryKind kind) {
        auto g = busy_interior(2);
        g.regions[0].E = E;
        auto c = busy_component(kind);
        c.E_b = E;
        std::vector<BoundaryComponentData> comps{c};
        return interior_coefficient(n, g).value + boundary_coefficient(n, g, comps).value;
    };
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Robin}) {
        for (int n = 0; n <= 4; ++n) {
            const double h = 0.37;
            double v[4];
            for (int k = 0; k < 4; ++k) v[k] = with_E(-0.2 + k * h, n, kind);
            const double d2 = v[2] - 2 * v[1] + v[0];
            const double d3 = v[3] - 3 * v[2] + 3 * v[1] - v[0];
            CHECK(std::abs(d3) < 1e-13);
            if (n <= 3) CHECK(std::abs(d2) < 1e-13);
        }
    }
}

TEST_CASE("disjoint union additivity") {
    auto d1 = cat("disk", {1.0});
    set_boundary_kind(d1, BoundaryKind::Robin, 0.7);
    auto d2 = cat("disk", {2.3});
    set_potential(d2, 0.4);
    auto s = cat("sphere", {0.9});
    auto h = cat("hemisphere", {1.4});
    auto u = disjoint_union(disjoint_union(d1, d2), disjoint_union(s, h));
    for (int n = 0; n <= 4; ++n) {
        const double parts = a(n, d1) + a(n, d2) + a(n, s) + a(n, h);
        CHECK(a(n, u) == doctest::Approx(parts).epsilon(1e-13));
    }
    auto c1 = cat("delta_circle", {2.0, 0.5});
    auto c2 = cat("delta_circle", {3.0, -1.5});
    auto cu = disjoint_union(c1, c2);
    for (int n = 0; n <= 3; ++n) CHECK(a(n, cu) == doctest::Approx(a(n, c1) + a(n, c2)).epsilon(1e-13));

    auto dn1 = cat("disk", {1.0});
    split_dirichlet_neumann(dn1, 0, 2.0);
    auto dn2 = cat("disk", {1.5});
    split_dirichlet_neumann(dn2, 0, 2.0);
    auto dnu = disjoint_union(dn1, dn2);
    for (int n = 0; n <= 2; ++n) CHECK(a(n, dnu) == doctest::Approx(a(n, dn1) + a(n, dn2)).epsilon(1e-13));
}

TEST_CASE("flat torus factorizes into circles") {
    const double L1 = 1.3, L2 = 2.9, E1 = 0.45, E2 = -0.8;
    auto c1 = cat("circle", {L1});
    auto c2 = cat("circle", {L2});
    c1.geometry.regions[0].E = E1;
    c2.geometry.regions[0].E = E2;
    auto t = cat("flat_torus", {L1, L2});
    t.geometry.regions[0].E = E1 + E2;
    for (int n = 0; n <= 4; ++n) {
        double prod = 0.0;
        for (int p = 0; p <= n; ++p) prod += a(p, c1) * a(n - p, c2);
        CHECK(std::abs(a(n, t) - prod) < 1e-12);
    }
}

TEST_CASE("scaling covariance on the interval") {
    auto base = cat("interval", {1.1});
    set_boundary_kind(base, BoundaryKind::Robin, 0.6);
    base.boundary[0].kind = BoundaryKind::Dirichlet;
    set_potential(base, 0.9);
    for (double c : {0.5, 2.0, 3.7}) {
        auto scaled = scale(base, c);
        for (int n = 0; n <= 4; ++n) {
            CHECK(a(n, scaled) == doctest::Approx(std::pow(c, 1 - n) * a(n, base)).epsilon(1e-13));
        }
    }
    auto disk = cat("disk", {1.0});
    set_boundary_kind(disk, BoundaryKind::Robin, -0.3);
    for (int n = 0; n <= 4; ++n) {
        CHECK(a(n, scale(disk, 1.9)) == doctest::Approx(std::pow(1.9, 2 - n) * a(n, disk)).epsilon(1e-13));
    }
}

TEST_CASE("Dirichlet and Neumann a_1 differ by sign exactly") {
    for (double L : {0.3, 1.0, 7.5}) {
        auto d = cat("interval", {L});
        auto nn = d;
        set_boundary_kind(nn, BoundaryKind::Robin, 0.0);
        CHECK(a(1, d) == -a(1, nn));
    }
    auto d = cat("disk", {1.0});
    auto nn = d;
    set_boundary_kind(nn, BoundaryKind::Robin, 0.0);
    CHECK(a(1, d) == -a(1, nn));
}
