#pragma once

#include <span>
#include <vector>

#include "heatcoeff/geometry.hpp"
#include "heatcoeff/report.hpp"

namespace heatcoeff {

// Integrated interior pairings <.,.> between V and V*.
struct InteriorPairings {
    double phi_rho = 0.0;     // int <phi, rho>
    double Dphi_rho = 0.0;    // int <D phi, rho>
    double p0_rho = 0.0;      // int <p_0, rho>
    double p1_rho = 0.0;      // int <p_1, rho>
    double Dp0_rho = 0.0;     // int <D p_0, rho>
    double Dphi_Drho = 0.0;   // int <D phi, D~ rho>
    double Tphi_rho = 0.0;    // int <G1_ij phi_;ij + F1_i phi_;i + E1 phi, rho>
};

// Integrated pairings over one boundary component. With d = phi - psi_0 on a
// Dirichlet component and b = B phi - psi_0 on a Robin component.
struct BoundaryPairings {
    // Dirichlet
    double d_rho = 0.0;            // <d, rho>
    double d_rho_m = 0.0;          // <d, rho_;m>
    double p0_rho = 0.0;           // <p_0, rho>
    double p0_rho_m = 0.0;         // <p_0, rho_;m>
    double psi1_rho = 0.0;         // <psi_1, rho>   (both kinds)
    double psi1_rho_m = 0.0;       // <psi_1, rho_;m>
    double Dphi_rho = 0.0;         // <D phi, rho>
    double d_Drho = 0.0;           // <d, D~ rho>
    double d_a_rho_a = 0.0;        // <d_:a, rho_:a>
    double Dphi_m_rho = 0.0;       // <(D phi)_;m, rho>
    double d_Drho_m = 0.0;         // <d, (D~ rho)_;m>
    double Lab_d_a_rho_b = 0.0;    // L_ab <d_:a, rho_:b>
    double Omega_d_a_rho = 0.0;    // <Omega_am d_:a, rho>
    double Omega_d_rho_a = 0.0;    // <Omega_am d, rho_:a>
    double G1am_d_a_rho = 0.0;     // G1_am <d_:a, rho>
    // Robin
    double b_rho = 0.0;            // <b, rho>
    double b_Brho = 0.0;           // <b, B~ rho>
    double Bp0_rho = 0.0;          // <B p_0, rho>
    double b_Drho = 0.0;           // <b, D~ rho>
    double Dphi_Brho = 0.0;        // <D phi, B~ rho>
};

struct HeatContentData {
    InteriorPairings interior;
    std::vector<BoundaryPairings> boundary;  // aligned with the component list
};

// beta_n, n <= 4, for Dirichlet/Robin components. Boundary invariants
// (L, E, tau, curvature) and the time data G1_mm, G1_mm_m, F1_m come from
// each component (its `time` field, else tp).
CoefficientReport heat_content_coefficient(int n, const GeometryInvariants& geo,
                                           std::span<const BoundaryComponentData> components,
                                           const HeatContentData& data, const TimePerturbation& tp = {});

// Pairings for spatially constant scalar data on a catalog geometry:
// phi, rho, psi_0, psi_1, p_0, p_1 constants, E = region/component E.
HeatContentData constant_field_data(const CatalogGeometry& cat, double phi, double rho, double psi0 = 0.0,
                                    double psi1 = 0.0, double p0 = 0.0, double p1 = 0.0,
                                    const TimePerturbation& tp = {});

}  // namespace heatcoeff
