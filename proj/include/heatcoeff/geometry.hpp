#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heatcoeff {

// Constant values of the smearing function f and its normal jets.
// Defaults (f = 1, jets 0) give the un-smeared trace.
struct SmearingJets {
    double f = 1.0;
    double f_m = 0.0;    // f_{;m}
    double f_mm = 0.0;   // f_{;mm}
    double f_iim = 0.0;  // f_{;iim}
};

// First-order time dependence of a Laplace type family, scalar mode.
// All fields zero is the static problem.
struct TimePerturbation {
    // interior
    double G1_ii = 0.0;        // G_{1,ii}
    double G1_ij_sq = 0.0;     // G_{1,ij} G_{1,ij}
    double G1_ii_jj = 0.0;     // G_{1,ii;jj}
    double G1_ij_ij = 0.0;     // G_{1,ij;ij}
    double G1_ij_Rikkj = 0.0;  // G_{1,ij} R_{ikkj}
    double G2_ii = 0.0;        // G_{2,ii}
    double F1_i_i = 0.0;       // F_{1,i;i}
    double E1 = 0.0;           // E_1
    // boundary
    double G1_mm = 0.0;
    double G1_aa = 0.0;
    double G1_ab_Lab = 0.0;  // G_{1,ab} L_{ab}
    double G1_mm_m = 0.0;    // G_{1,mm;m}
    double G1_aa_m = 0.0;    // G_{1,aa;m}
    double G1_am_a = 0.0;    // G_{1,am;a}, enters with coefficient 0
    double F1_m = 0.0;       // F_{1,m}
    double S1 = 0.0;         // Robin t-correction
    double T_a = 0.0;        // tangential Robin t-correction (no printed term uses it)

    bool is_static() const;
};

enum class BoundaryKind { Dirichlet, Robin, Transmittal, SpectralBC, DNJunction };

std::string_view to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(std::string_view name);

// An interior region on which every invariant is constant. Integrals of
// invariants over the region are value * measure.
struct Region {
    double measure = 0.0;
    double tau = 0.0;      // scalar curvature
    double rho_sq = 0.0;   // |rho|^2
    double riem_sq = 0.0;  // |R|^2
    double tau_lap = 0.0;  // tau_{;kk}
    int fiber_dim = 1;
    double E = 0.0;         // endomorphism (scalar multiple of identity)
    double E_lap = 0.0;     // E_{;kk}
    double omega_sq = 0.0;  // Tr(Omega_ij Omega_ij), already traced
    std::optional<SmearingJets> jets;
};

struct GeometryInvariants {
    std::string name = "custom";
    int m = 1;
    std::vector<Region> regions;

    double volume() const;
};

// Hypersurface data for a transmittal interface Sigma between M+ and M-.
struct TransmittalData {
    double measure = 1.0;  // (m-1)-volume of Sigma
    int fiber_dim = 1;
    double Xi = 0.0;  // impedance
    double Lp_aa = 0.0, Lm_aa = 0.0;
    double Lp_ab_sq = 0.0, Lm_ab_sq = 0.0;  // L^+_ab L^+_ab, L^-_ab L^-_ab
    double Lpm_aa_bb = 0.0;                 // L^+_aa L^-_bb
    double Lpm_ab_ab = 0.0;                 // L^+_ab L^-_ab
    double omega_sq = 0.0;                  // Tr(omega_a omega_a)
    double fjet_plus = 0.0;                 // f^+_{;nu+}
    double fjet_minus = 0.0;                // f^-_{;nu-}
};

struct BoundaryComponentData {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    std::string label;
    // (m-1)-volume, or (m-2)-volume for a D/N junction.
    double measure = 0.0;
    int fiber_dim = 1;

    // second fundamental form contractions, inward normal
    double Laa = 0.0;
    double LabLab = 0.0;
    double LaaLbb = 0.0;
    double LaaLbbLcc = 0.0;
    double LabLabLcc = 0.0;
    double LabLbcLac = 0.0;
    double Laa_bb = 0.0;  // L_{aa:bb}
    double Lab_ab = 0.0;  // L_{ab:ab}

    // curvature and endomorphism restricted to the component
    double tau = 0.0;
    double rho_mm = 0.0;
    double R_ambm_Lab = 0.0;
    double R_abcb_Lac = 0.0;
    double tau_m = 0.0;  // tau_{;m}
    double E_b = 0.0;
    double E_m = 0.0;  // E_{;m}

    // Robin endomorphism
    double S = 0.0;
    double S_aa = 0.0;  // S_{:aa}

    std::optional<SmearingJets> jets;
    std::optional<TimePerturbation> time;
    std::optional<TransmittalData> interface;
};

struct CatalogGeometry {
    GeometryInvariants geometry;
    std::vector<BoundaryComponentData> boundary;
    // Closed manifolds have only even-order trace coefficients.
    bool closed() const;
};

// Catalog of homogeneous benchmark geometries:
//   interval(L), circle(L), rectangle(a,b), flat_torus(L1,L2), disk(R),
//   sphere(R), hemisphere(R), delta_circle(L, Xi), cylinder(R, H).
// Boundary components start out Dirichlet; use set_boundary_kind to change.
CatalogGeometry catalog_geometry(std::string_view name, std::span<const double> params);
std::vector<std::string> catalog_names();

// invariant value * measure of the region
double integrate(const GeometryInvariants& geometry, std::size_t region, double value);
double integrate(const BoundaryComponentData& component, double value);

// Sets kind (and S for Robin) on every non-interface component.
void set_boundary_kind(CatalogGeometry& cat, BoundaryKind kind, double S = 0.0);

// Applies a constant potential V, i.e. E = -V, to all regions and components.
void set_potential(CatalogGeometry& cat, double V);

// Replaces a closed boundary component by a Dirichlet half, a Neumann half and
// their codimension-two junction of the given measure.
void split_dirichlet_neumann(CatalogGeometry& cat, std::size_t component, double junction_measure);

// Rescales lengths by c: measures by c^dim, curvature of degree k by c^-k.
CatalogGeometry scale(const CatalogGeometry& cat, double c);

}  // namespace heatcoeff
