#include "heatcoeff/geometry.hpp"

#include <cmath>
#include <numbers>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

bool TimePerturbation::is_static() const {
    for (double v : {G1_ii, G1_ij_sq, G1_ii_jj, G1_ij_ij, G1_ij_Rikkj, G2_ii, F1_i_i, E1, G1_mm,
                     G1_aa, G1_ab_Lab, G1_mm_m, G1_aa_m, G1_am_a, F1_m, S1, T_a}) {
        if (v != 0.0) return false;
    }
    return true;
}

std::string_view to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::Dirichlet: return "dirichlet";
        case BoundaryKind::Robin: return "robin";
        case BoundaryKind::Transmittal: return "transmittal";
        case BoundaryKind::SpectralBC: return "spectral";
        case BoundaryKind::DNJunction: return "dn_junction";
    }
    return "?";
}

BoundaryKind boundary_kind_from_string(std::string_view name) {
    if (name == "dirichlet" || name == "D") return BoundaryKind::Dirichlet;
    if (name == "robin" || name == "neumann" || name == "N") return BoundaryKind::Robin;
    if (name == "transmittal") return BoundaryKind::Transmittal;
    if (name == "spectral") return BoundaryKind::SpectralBC;
    if (name == "dn_junction" || name == "DNJunction") return BoundaryKind::DNJunction;
    throw InvalidInput("unknown boundary kind '" + std::string(name) + "'");
}

double GeometryInvariants::volume() const {
    double v = 0.0;
    for (const auto& r : regions) v += r.measure;
    return v;
}

bool CatalogGeometry::closed() const { return boundary.empty(); }

namespace {

constexpr double pi = std::numbers::pi;

void require_count(std::string_view name, std::span<const double> params, std::size_t n) {
    if (params.size() != n) {
        throw InvalidInput(std::string(name) + " expects " + std::to_string(n) + " parameter(s), got " +
                           std::to_string(params.size()));
    }
}

void require_positive(std::string_view name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidInput(std::string(name) + ": dimension parameter must be positive, got " +
                           std::to_string(v));
    }
}

BoundaryComponentData flat_component(std::string label, double measure) {
    BoundaryComponentData c;
    c.label = std::move(label);
    c.measure = measure;
    return c;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"interval", "circle", "rectangle", "flat_torus", "disk",
            "sphere",   "hemisphere", "delta_circle", "cylinder"};
}

CatalogGeometry catalog_geometry(std::string_view name, std::span<const double> params) {
    CatalogGeometry out;
    auto& g = out.geometry;
    g.name = std::string(name);

    if (name == "interval") {
        require_count(name, params, 1);
        const double L = params[0];
        require_positive(name, L);
        g.m = 1;
        g.regions.push_back({.measure = L});
        out.boundary.push_back(flat_component("left", 1.0));
        out.boundary.push_back(flat_component("right", 1.0));
    } else if (name == "circle") {
        require_count(name, params, 1);
        require_positive(name, params[0]);
        g.m = 1;
        g.regions.push_back({.measure = params[0]});
    } else if (name == "rectangle") {
        require_count(name, params, 2);
        const double a = params[0], b = params[1];
        require_positive(name, a);
        require_positive(name, b);
        g.m = 2;
        g.regions.push_back({.measure = a * b});
        // Corner contributions are not part of the smooth-boundary formulas.
        out.boundary.push_back(flat_component("bottom", a));
        out.boundary.push_back(flat_component("right", b));
        out.boundary.push_back(flat_component("top", a));
        out.boundary.push_back(flat_component("left", b));
    } else if (name == "flat_torus") {
        require_count(name, params, 2);
        require_positive(name, params[0]);
        require_positive(name, params[1]);
        g.m = 2;
        g.regions.push_back({.measure = params[0] * params[1]});
    } else if (name == "disk") {
        require_count(name, params, 1);
        const double R = params[0];
        require_positive(name, R);
        g.m = 2;
        g.regions.push_back({.measure = pi * R * R});
        auto c = flat_component("circle", 2.0 * pi * R);
        c.Laa = 1.0 / R;
        c.LabLab = c.LaaLbb = 1.0 / (R * R);
        c.LaaLbbLcc = c.LabLabLcc = c.LabLbcLac = 1.0 / (R * R * R);
        out.boundary.push_back(c);
    } else if (name == "sphere" || name == "hemisphere") {
        require_count(name, params, 1);
        const double R = params[0];
        require_positive(name, R);
        const double R2 = R * R;
        g.m = 2;
        const double area = (name == "sphere" ? 4.0 : 2.0) * pi * R2;
        g.regions.push_back(
            {.measure = area, .tau = 2.0 / R2, .rho_sq = 2.0 / (R2 * R2), .riem_sq = 4.0 / (R2 * R2)});
        if (name == "hemisphere") {
            // equator: geodesic, so every L contraction vanishes
            auto c = flat_component("equator", 2.0 * pi * R);
            c.tau = 2.0 / R2;
            c.rho_mm = 1.0 / R2;
            out.boundary.push_back(c);
        }
    } else if (name == "delta_circle") {
        require_count(name, params, 2);
        require_positive(name, params[0]);
        if (!std::isfinite(params[1])) throw InvalidInput("delta_circle: Xi must be finite");
        g.m = 1;
        g.regions.push_back({.measure = params[0]});
        auto c = flat_component("delta", 1.0);
        c.kind = BoundaryKind::Transmittal;
        c.interface = TransmittalData{.measure = 1.0, .Xi = params[1]};
        out.boundary.push_back(c);
    } else if (name == "cylinder") {
        require_count(name, params, 2);
        const double R = params[0], H = params[1];
        require_positive(name, R);
        require_positive(name, H);
        g.m = 2;
        g.regions.push_back({.measure = 2.0 * pi * R * H});
        out.boundary.push_back(flat_component("bottom", 2.0 * pi * R));
        out.boundary.push_back(flat_component("top", 2.0 * pi * R));
    } else {
        throw InvalidInput("unknown catalog geometry '" + std::string(name) + "'");
    }
    return out;
}

double integrate(const GeometryInvariants& geometry, std::size_t region, double value) {
    if (region >= geometry.regions.size()) {
        throw InvalidInput("region index " + std::to_string(region) + " out of range (" +
                           std::to_string(geometry.regions.size()) + " regions)");
    }
    return value * geometry.regions[region].measure;
}

double integrate(const BoundaryComponentData& component, double value) {
    return value * component.measure;
}

void set_boundary_kind(CatalogGeometry& cat, BoundaryKind kind, double S) {
    if (kind != BoundaryKind::Dirichlet && kind != BoundaryKind::Robin) {
        throw InvalidInput("set_boundary_kind accepts Dirichlet or Robin only");
    }
    for (auto& c : cat.boundary) {
        if (c.kind == BoundaryKind::Transmittal || c.kind == BoundaryKind::DNJunction) continue;
        c.kind = kind;
        c.S = kind == BoundaryKind::Robin ? S : 0.0;
    }
}

void set_potential(CatalogGeometry& cat, double V) {
    for (auto& r : cat.geometry.regions) r.E = -V;
    for (auto& c : cat.boundary) c.E_b = -V;
}

void split_dirichlet_neumann(CatalogGeometry& cat, std::size_t component, double junction_measure) {
    if (component >= cat.boundary.size()) throw InvalidInput("component index out of range");
    if (cat.geometry.m < 2) throw InvalidInput("a D/N junction needs m >= 2");
    if (!(junction_measure > 0.0)) throw InvalidInput("junction measure must be positive");
    BoundaryComponentData d = cat.boundary[component];
    d.kind = BoundaryKind::Dirichlet;
    d.S = 0.0;
    d.measure *= 0.5;
    d.label += ":D";
    BoundaryComponentData n = d;
    n.kind = BoundaryKind::Robin;
    n.label = cat.boundary[component].label + ":N";
    BoundaryComponentData j;
    j.kind = BoundaryKind::DNJunction;
    j.label = cat.boundary[component].label + ":junction";
    j.measure = junction_measure;
    j.fiber_dim = d.fiber_dim;
    j.jets = d.jets;
    cat.boundary[component] = d;
    cat.boundary.insert(cat.boundary.begin() + static_cast<std::ptrdiff_t>(component) + 1, {n, j});
}

CatalogGeometry scale(const CatalogGeometry& cat, double c) {
    if (!(c > 0.0)) throw InvalidInput("scale factor must be positive");
    CatalogGeometry out = cat;
    const int m = out.geometry.m;
    const double c1 = 1.0 / c, c2 = c1 * c1, c3 = c2 * c1, c4 = c2 * c2;
    auto scale_jets = [&](std::optional<SmearingJets>& j) {
        if (!j) return;
        j->f_m *= c1;
        j->f_mm *= c2;
        j->f_iim *= c3;
    };
    auto scale_time = [&](std::optional<TimePerturbation>& tp) {
        if (!tp) return;
        tp->G1_ii *= c2;
        tp->G1_ij_sq *= c4;
        tp->G1_ii_jj *= c4;
        tp->G1_ij_ij *= c4;
        tp->G1_ij_Rikkj *= c4;
        tp->G2_ii *= c4;
        tp->F1_i_i *= c4;
        tp->E1 *= c4;
        tp->G1_mm *= c2;
        tp->G1_aa *= c2;
        tp->T_a *= c2;
        for (double* v : {&tp->G1_ab_Lab, &tp->G1_mm_m, &tp->G1_aa_m, &tp->G1_am_a, &tp->F1_m, &tp->S1}) {
            *v *= c3;
        }
    };
    for (auto& r : out.geometry.regions) {
        r.measure *= std::pow(c, m);
        r.tau *= c2;
        r.E *= c2;
        r.rho_sq *= c4;
        r.riem_sq *= c4;
        r.tau_lap *= c4;
        r.E_lap *= c4;
        r.omega_sq *= c4;
        scale_jets(r.jets);
    }
    for (auto& b : out.boundary) {
        const int dim = b.kind == BoundaryKind::DNJunction ? m - 2 : m - 1;
        b.measure *= std::pow(c, dim);
        b.Laa *= c1;
        b.S *= c1;
        b.LabLab *= c2;
        b.LaaLbb *= c2;
        b.tau *= c2;
        b.rho_mm *= c2;
        b.E_b *= c2;
        for (double* v : {&b.LaaLbbLcc, &b.LabLabLcc, &b.LabLbcLac, &b.Laa_bb, &b.Lab_ab, &b.R_ambm_Lab,
                          &b.R_abcb_Lac, &b.tau_m, &b.E_m, &b.S_aa}) {
            *v *= c3;
        }
        scale_jets(b.jets);
        scale_time(b.time);
        if (b.interface) {
            auto& t = *b.interface;
            t.measure *= std::pow(c, m - 1);
            t.Xi *= c1;
            t.Lp_aa *= c1;
            t.Lm_aa *= c1;
            t.fjet_plus *= c1;
            t.fjet_minus *= c1;
            for (double* v : {&t.Lp_ab_sq, &t.Lm_ab_sq, &t.Lpm_aa_bb, &t.Lpm_ab_ab, &t.omega_sq}) *v *= c2;
        }
    }
    return out;
}

}  // namespace heatcoeff
