#pragma once

#include <span>

#include "heatcoeff/geometry.hpp"
#include "heatcoeff/report.hpp"

namespace heatcoeff {

// Interior coefficients a_0..a_4 of a closed or bounded manifold. Odd orders
// vanish. Region jets override f when present.
CoefficientReport interior_coefficient(int n, const GeometryInvariants& geo, const SmearingJets& f = {});

// Dirichlet/Robin boundary coefficients a_0..a_4, summed over components.
CoefficientReport boundary_coefficient(int n, const GeometryInvariants& geo,
                                       std::span<const BoundaryComponentData> components,
                                       const SmearingJets& f = {});

// Interface contribution a_n^Sigma for n <= 3.
CoefficientReport transmittal_coefficient(int n, const GeometryInvariants& geo, const TransmittalData& td,
                                          const SmearingJets& f = {});

// Static interior value plus the first-order time-dependence correction (n even).
CoefficientReport time_dependent_interior(int n, const GeometryInvariants& geo, const TimePerturbation& tp,
                                          const SmearingJets& f = {});

// Static boundary value plus the time-dependence correction. A component's
// own `time` field takes precedence over tp.
CoefficientReport time_dependent_boundary(int n, const GeometryInvariants& geo,
                                          std::span<const BoundaryComponentData> components,
                                          const TimePerturbation& tp, const SmearingJets& f = {});

// Codimension-two D/N junction term. n <= 1 gives 0, n = 2 the conjectural
// value, n >= 3 throws NotLocallyComputable.
CoefficientReport dn_coefficient(int n, const GeometryInvariants& geo, const BoundaryComponentData& junction,
                                 const SmearingJets& f = {});

// Full a_n of a catalog problem: interior + Dirichlet/Robin boundary +
// interfaces + junctions, with time corrections when tp is non-static.
CoefficientReport trace_coefficient(int n, const CatalogGeometry& cat, const TimePerturbation& tp = {},
                                    const SmearingJets& f = {});

// Normalization exponent (times two) of a_n: -m for even n, 1-m for odd n.
int trace_normalization_twice_exponent(int n, int m);

// Transmittal data for a smooth gluing (L^- = -L^+, omega = 0).
TransmittalData smooth_gluing(double measure, double Lp_aa, double Lp_ab_sq, double Xi = 0.0);

}  // namespace heatcoeff
