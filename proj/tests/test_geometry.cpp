#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "heatcoeff/errors.hpp"
#include "heatcoeff/geometry.hpp"

using namespace heatcoeff;
using std::numbers::pi;

namespace {
CatalogGeometry cat(const char* name, std::vector<double> p) { return catalog_geometry(name, p); }
}  // namespace

TEST_CASE("interval catalog entry") {
    auto c = cat("interval", {1.0});
    CHECK(c.geometry.m == 1);
    REQUIRE(c.geometry.regions.size() == 1);
    CHECK(c.geometry.regions[0].measure == 1.0);
    CHECK(c.geometry.regions[0].tau == 0.0);
    REQUIRE(c.boundary.size() == 2);
    for (const auto& b : c.boundary) {
        CHECK(b.kind == BoundaryKind::Dirichlet);
        CHECK(b.measure == 1.0);
        CHECK(b.Laa == 0.0);
        CHECK(b.rho_mm == 0.0);
    }
    CHECK_FALSE(c.closed());
}

TEST_CASE("sphere catalog entry satisfies the constant curvature identities") {
    auto c = cat("sphere", {1.0});
    const auto& r = c.geometry.regions.at(0);
    CHECK(c.geometry.m == 2);
    CHECK(r.measure == doctest::Approx(4.0 * pi).epsilon(1e-15));
    CHECK(r.tau == 2.0);
    CHECK(r.rho_sq == 2.0);
    CHECK(r.riem_sq == 4.0);
    CHECK(c.boundary.empty());
    CHECK(c.closed());
}

TEST_CASE("disk catalog entry") {
    auto c = cat("disk", {1.0});
    CHECK(c.geometry.m == 2);
    CHECK(c.geometry.regions.at(0).measure == doctest::Approx(pi).epsilon(1e-15));
    CHECK(c.geometry.regions.at(0).tau == 0.0);
    REQUIRE(c.boundary.size() == 1);
    CHECK(c.boundary[0].measure == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(c.boundary[0].Laa == 1.0);

    auto big = cat("disk", {2.5});
    CHECK(big.boundary[0].Laa == doctest::Approx(1.0 / 2.5).epsilon(1e-15));
}

TEST_CASE("integrate is value times measure") {
    auto s = cat("sphere", {1.0});
    CHECK(integrate(s.geometry, 0, 2.0) == doctest::Approx(8.0 * pi).epsilon(1e-15));
    auto i = cat("interval", {2.0});
    CHECK(integrate(i.geometry, 0, 0.0) == 0.0);
    auto d = cat("disk", {1.0});
    CHECK(integrate(d.boundary[0], d.boundary[0].Laa) == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK_THROWS_AS(integrate(s.geometry, 1, 1.0), InvalidInput);
}

TEST_CASE("hemisphere equator is geodesic") {
    auto h = cat("hemisphere", {1.7});
    REQUIRE(h.boundary.size() == 1);
    const auto& b = h.boundary[0];
    CHECK(b.Laa == 0.0);
    CHECK(b.LabLab == 0.0);
    CHECK(b.LaaLbb == 0.0);
    CHECK(b.LaaLbbLcc == 0.0);
    CHECK(b.LabLabLcc == 0.0);
    CHECK(b.LabLbcLac == 0.0);
    CHECK(b.Laa_bb == 0.0);
    CHECK(b.R_ambm_Lab == 0.0);
    CHECK(b.R_abcb_Lac == 0.0);
}

TEST_CASE("catalog round trip under scaling") {
    const double c = 1.7;
    SUBCASE("interval") {
        auto a = cat("interval", {1.3});
        auto s = scale(a, c);
        auto direct = cat("interval", {1.3 * c});
        CHECK(s.geometry.regions[0].measure == doctest::Approx(direct.geometry.regions[0].measure).epsilon(1e-15));
        CHECK(s.boundary[0].measure == 1.0);
    }
    SUBCASE("disk") {
        auto a = cat("disk", {0.8});
        auto s = scale(a, c);
        auto direct = cat("disk", {0.8 * c});
        CHECK(s.geometry.regions[0].measure == doctest::Approx(direct.geometry.regions[0].measure).epsilon(1e-14));
        CHECK(s.boundary[0].measure == doctest::Approx(direct.boundary[0].measure).epsilon(1e-14));
        CHECK(s.boundary[0].Laa == doctest::Approx(direct.boundary[0].Laa).epsilon(1e-14));
        CHECK(s.boundary[0].LaaLbb == doctest::Approx(direct.boundary[0].LaaLbb).epsilon(1e-14));
        CHECK(s.boundary[0].LabLbcLac == doctest::Approx(direct.boundary[0].LabLbcLac).epsilon(1e-14));
    }
    SUBCASE("sphere") {
        auto a = cat("sphere", {1.0});
        auto s = scale(a, c);
        auto direct = cat("sphere", {c});
        const auto& r = s.geometry.regions[0];
        const auto& d = direct.geometry.regions[0];
        CHECK(r.measure == doctest::Approx(d.measure).epsilon(1e-14));
        CHECK(r.tau == doctest::Approx(d.tau).epsilon(1e-14));
        CHECK(r.rho_sq == doctest::Approx(d.rho_sq).epsilon(1e-14));
        CHECK(r.riem_sq == doctest::Approx(d.riem_sq).epsilon(1e-14));
    }
}

TEST_CASE("catalog errors") {
    CHECK_THROWS_AS(cat("klein_bottle", {1.0}), InvalidInput);
    CHECK_THROWS_AS(cat("interval", {0.0}), InvalidInput);
    CHECK_THROWS_AS(cat("disk", {-1.0}), InvalidInput);
    CHECK_THROWS_AS(cat("rectangle", {1.0}), InvalidInput);
    auto s = cat("sphere", {1.0});
    CHECK_THROWS_AS(scale(s, 0.0), InvalidInput);
}

TEST_CASE("every catalog name builds with unit parameters") {
    for (const auto& name : catalog_names()) {
        std::vector<double> p{1.0};
        if (name == "rectangle" || name == "flat_torus" || name == "cylinder" || name == "delta_circle") p = {1.0, 1.0};
        auto c = catalog_geometry(name, p);
        CHECK(c.geometry.volume() > 0.0);
    }
}

TEST_CASE("set_potential and set_boundary_kind") {
    auto c = cat("interval", {1.0});
    set_potential(c, 2.0);
    CHECK(c.geometry.regions[0].E == -2.0);
    CHECK(c.boundary[0].E_b == -2.0);
    set_boundary_kind(c, BoundaryKind::Robin, 0.5);
    CHECK(c.boundary[1].kind == BoundaryKind::Robin);
    CHECK(c.boundary[1].S == 0.5);
    CHECK_THROWS_AS(set_boundary_kind(c, BoundaryKind::Transmittal), InvalidInput);
}
