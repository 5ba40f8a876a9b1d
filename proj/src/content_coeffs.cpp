#include "heatcoeff/content_coeffs.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

namespace {

using R = Rational;

const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

Part interior_part(int n, const InteriorPairings& p) {
    PartBuilder b("interior");
    switch (n) {
        case 0: b.add("<phi,rho>", R(1), p.phi_rho); break;
        case 2:
            b.add("<D phi,rho>", R(-1), p.Dphi_rho);
            b.add("<p0,rho>", R(1), p.p0_rho);
            break;
        case 4:
            b.add("<p1,rho>", R(1, 2), p.p1_rho);
            b.add("<D p0,rho>", R(-1, 2), p.Dp0_rho);
            b.add("<D phi,D~ rho>", R(1, 2), p.Dphi_Drho);
            b.add("<G1 phi;ij + F1 phi;i + E1 phi,rho>", R(-1, 2), p.Tphi_rho);
            break;
        default: break;
    }
    return std::move(b).finish(1.0);
}

Part dirichlet_part(int n, const BoundaryComponentData& c, const BoundaryPairings& p, const TimePerturbation& tp) {
    PartBuilder b("boundary:" + c.label);
    const double k = -2.0 * inv_sqrt_pi;
    const std::string kl = "-2/sqrt(pi)";
    switch (n) {
        case 1: b.add("<phi-psi0,rho>", R(1), k, kl, p.d_rho); break;
        case 2:
            b.add("L_aa <phi-psi0,rho>", R(1, 2), c.Laa * p.d_rho);
            b.add("<phi-psi0,rho;m>", R(-1), p.d_rho_m);
            break;
        case 3: {
            // R_amam = -rho_mm
            const double R_amam = -c.rho_mm;
            b.add("<p0,rho>", R(2, 3), k, kl, p.p0_rho);
            b.add("<D phi,rho>", R(-2, 3), k, kl, p.Dphi_rho);
            b.add("<phi-psi0,D~ rho>", R(-2, 3), k, kl, p.d_Drho);
            b.add("<(phi-psi0):a,rho:a>", R(1, 3), k, kl, p.d_a_rho_a);
            b.add("<psi1,rho>", R(-2, 3), k, kl, p.psi1_rho);
            b.add("E <phi-psi0,rho>", R(-1, 3), k, kl, c.E_b * p.d_rho);
            b.add("L_aa L_bb <phi-psi0,rho>", R(1, 12), k, kl, c.LaaLbb * p.d_rho);
            b.add("L_ab L_ab <phi-psi0,rho>", R(-1, 6), k, kl, c.LabLab * p.d_rho);
            b.add("R_amam <phi-psi0,rho>", R(1, 6), k, kl, R_amam * p.d_rho);
            // -1/4 matches the exact rescaling s = t + gamma t^2 / 2 of D(t) = (1 + gamma t) D
            b.add("G1_mm <phi-psi0,rho>", R(-1, 4), k, kl, tp.G1_mm * p.d_rho);
            break;
        }
        case 4:
            b.add("L_aa <p0,rho>", R(1, 4), c.Laa * p.p0_rho);
            b.add("<p0,rho;m>", R(-1, 2), p.p0_rho_m);
            b.add("L_aa <psi1,rho>", R(-1, 4), c.Laa * p.psi1_rho);
            b.add("<psi1,rho;m>", R(1, 2), p.psi1_rho_m);
            b.add("<(D phi);m,rho>", R(1, 2), p.Dphi_m_rho);
            b.add("<phi-psi0,(D~ rho);m>", R(1, 2), p.d_Drho_m);
            b.add("L_aa <D phi,rho>", R(-1, 4), c.Laa * p.Dphi_rho);
            b.add("L_aa <phi-psi0,D~ rho>", R(-1, 4), c.Laa * p.d_Drho);
            b.add("E;m <phi-psi0,rho>", R(1, 8), c.E_m * p.d_rho);
            b.add("L_ab L_ab L_cc <phi-psi0,rho>", R(-1, 16), c.LabLabLcc * p.d_rho);
            b.add("L_ab L_ac L_bc <phi-psi0,rho>", R(1, 8), c.LabLbcLac * p.d_rho);
            b.add("R_ambm L_ab <phi-psi0,rho>", R(-1, 16), c.R_ambm_Lab * p.d_rho);
            b.add("R_abcb L_ac <phi-psi0,rho>", R(1, 16), c.R_abcb_Lac * p.d_rho);
            b.add("tau;m <phi-psi0,rho>", R(1, 32), c.tau_m * p.d_rho);
            b.add("L_ab:ab <phi-psi0,rho>", R(1, 16), c.Lab_ab * p.d_rho);
            b.add("L_ab <(phi-psi0):a,rho:b>", R(-1, 4), p.Lab_d_a_rho_b);
            b.add("<Omega_am (phi-psi0):a,rho>", R(-1, 8), p.Omega_d_a_rho);
            b.add("<Omega_am (phi-psi0),rho:a>", R(1, 8), p.Omega_d_rho_a);
            b.add("G1_mm;m <phi-psi0,rho>", R(7, 16), tp.G1_mm_m * p.d_rho);
            b.add("G1_mm L_aa <phi-psi0,rho>", R(-1, 4), tp.G1_mm * c.Laa * p.d_rho);
            b.add("F1_m <phi-psi0,rho>", R(-5, 16), tp.F1_m * p.d_rho);
            b.add("G1_am <(phi-psi0):a,rho>", R(-5, 16), p.G1am_d_a_rho);
            b.add("G1_mm <phi-psi0,rho;m>", R(1, 2), tp.G1_mm * p.d_rho_m);
            break;
        default: break;
    }
    return std::move(b).finish(1.0);
}

Part robin_part(int n, const BoundaryComponentData& c, const BoundaryPairings& p, const TimePerturbation& tp) {
    PartBuilder b("boundary:" + c.label);
    switch (n) {
        case 2: b.add("<B phi-psi0,rho>", R(1), p.b_rho); break;
        case 3: b.add("<B phi-psi0,B~ rho>", R(4, 3), inv_sqrt_pi, "1/sqrt(pi)", p.b_Brho); break;
        case 4:
            b.add("<B p0,rho>", R(1, 2), p.Bp0_rho);
            b.add("<B phi-psi0,D~ rho>", R(-1, 2), p.b_Drho);
            b.add("<D phi,B~ rho>", R(-1, 2), p.Dphi_Brho);
            b.add("<psi1,rho>", R(-1, 2), p.psi1_rho);
            b.add("S <B phi-psi0,B~ rho>", R(1, 2), c.S * p.b_Brho);
            b.add("L_aa <B phi-psi0,B~ rho>", R(1, 4), c.Laa * p.b_Brho);
            b.add("G1_mm <B phi-psi0,rho>", R(-1, 2), tp.G1_mm * p.b_rho);
            break;
        default: break;
    }
    return std::move(b).finish(1.0);
}

BoundaryComponentData tangential_free(const BoundaryComponentData& c, int m) {
    if (m > 1) return c;
    BoundaryComponentData e = c;
    e.Laa = e.LabLab = e.LaaLbb = e.LaaLbbLcc = e.LabLabLcc = e.LabLbcLac = e.Laa_bb = e.Lab_ab = 0.0;
    e.tau = e.rho_mm = e.R_ambm_Lab = e.R_abcb_Lac = e.tau_m = 0.0;
    return e;
}

}  // namespace

CoefficientReport heat_content_coefficient(int n, const GeometryInvariants& geo,
                                           std::span<const BoundaryComponentData> components,
                                           const HeatContentData& data, const TimePerturbation& tp) {
    if (n < 0) throw InvalidInput("heat_content_coefficient: negative order");
    if (n > 4) {
        throw UnsupportedOrder("heat_content_coefficient: beta_" + std::to_string(n) +
                                   " is not available (max beta_4)",
                               n);
    }
    if (data.boundary.size() != components.size()) {
        throw InvalidInput("heat content data has " + std::to_string(data.boundary.size()) +
                           " boundary pairing sets for " + std::to_string(components.size()) + " components");
    }
    auto rep = make_report("content", n, 0);
    add_part(rep, interior_part(n, data.interior));
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& raw = components[i];
        const auto c = tangential_free(raw, geo.m);
        const auto ctp = raw.time.value_or(tp);
        switch (c.kind) {
            case BoundaryKind::Dirichlet: add_part(rep, dirichlet_part(n, c, data.boundary[i], ctp)); break;
            case BoundaryKind::Robin: add_part(rep, robin_part(n, c, data.boundary[i], ctp)); break;
            default:
                throw InvalidInput("heat content: component '" + c.label + "' has kind " +
                                   std::string(to_string(c.kind)) + ", expected dirichlet or robin");
        }
    }
    return rep;
}

HeatContentData constant_field_data(const CatalogGeometry& cat, double phi, double rho, double psi0, double psi1,
                                    double p0, double p1, const TimePerturbation& tp) {
    HeatContentData d;
    auto& in = d.interior;
    for (const auto& r : cat.geometry.regions) {
        const double w = r.measure;
        in.phi_rho += phi * rho * w;
        in.Dphi_rho += -r.E * phi * rho * w;
        in.p0_rho += p0 * rho * w;
        in.p1_rho += p1 * rho * w;
        in.Dp0_rho += -r.E * p0 * rho * w;
        in.Dphi_Drho += r.E * r.E * phi * rho * w;
        in.Tphi_rho += tp.E1 * phi * rho * w;
    }
    for (const auto& c : cat.boundary) {
        BoundaryPairings b;
        const double w = c.measure;
        b.psi1_rho = psi1 * rho * w;
        if (c.kind == BoundaryKind::Dirichlet) {
            const double dd = phi - psi0;
            b.d_rho = dd * rho * w;
            b.p0_rho = p0 * rho * w;
            b.Dphi_rho = -c.E_b * phi * rho * w;
            b.d_Drho = -c.E_b * dd * rho * w;
            b.Dphi_m_rho = -c.E_m * phi * rho * w;
            b.d_Drho_m = -c.E_m * dd * rho * w;
        } else if (c.kind == BoundaryKind::Robin) {
            const double bb = c.S * phi - psi0;
            b.b_rho = bb * rho * w;
            b.b_Brho = bb * c.S * rho * w;
            b.Bp0_rho = c.S * p0 * rho * w;
            b.b_Drho = -c.E_b * bb * rho * w;
            b.Dphi_Brho = -c.E_b * phi * c.S * rho * w;
        }
        d.boundary.push_back(b);
    }
    return d;
}

}  // namespace heatcoeff
