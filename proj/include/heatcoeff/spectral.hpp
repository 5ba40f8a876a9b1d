#pragma once

#include <vector>

#include <Eigen/Dense>

#include "heatcoeff/geometry.hpp"
#include "heatcoeff/rational.hpp"
#include "heatcoeff/report.hpp"

namespace heatcoeff {

// C(m) = Gamma(m/2) / (Gamma(1/2) Gamma((m+1)/2)) = rational * pi^pi_power,
// with pi_power -1 for even m and 0 for odd m.
struct CliffordConstant {
    Rational rational;
    int pi_power = 0;
    double value() const;
};

CliffordConstant clifford_constant(int m);

// Boundary data of a Dirac type complex with spectral (APS type) boundary
// conditions. Matrices act on the fiber of E_1 (dimension d), constant along
// the boundary. Gammas are the tangential gamma_a^T, a = 1..m-1, and must
// satisfy gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab with gamma_a
// skew-adjoint.
struct SpectralBCData {
    int m = 4;
    Eigen::MatrixXcd psi_hat;
    Eigen::MatrixXcd theta;
    std::vector<Eigen::MatrixXcd> gammas;
    double boundary_measure = 0.0;
    double Laa = 0.0;
    double LabLab = 0.0;
    double LaaLbb = 0.0;
    double tau = 0.0;     // on the boundary
    double rho_mm = 0.0;  // on the boundary
};

// Throws InvalidInput when shapes, Clifford relations or self-adjointness of
// Theta fail at tolerance 1e-12.
void validate(const SpectralBCData& data);

// a_n, n <= 3. The interior pieces (a_0, a_2^M) use geo; geo.m must equal data.m.
CoefficientReport spectral_coefficient(int n, const SpectralBCData& data, const SmearingJets& f,
                                       const GeometryInvariants& geo);

}  // namespace heatcoeff
