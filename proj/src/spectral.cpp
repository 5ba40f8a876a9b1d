#include "heatcoeff/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "heatcoeff/errors.hpp"
#include "heatcoeff/trace_coeffs.hpp"

namespace heatcoeff {

namespace {

using R = Rational;
constexpr double tol = 1e-12;

// a + b C(m) + c pi C(m) with rational a, b, c.
struct Affine {
    R a, b, c;
};

double eval(const Affine& x, double C) {
    return x.a.to_double() + x.b.to_double() * C + x.c.to_double() * std::numbers::pi * C;
}

std::string label(const Affine& x) {
    std::string s;
    auto piece = [&](R r, const char* sym) {
        if (r.is_zero()) return;
        if (!s.empty()) s += " + ";
        s += "(" + r.str() + ")" + sym;
    };
    piece(x.a, "");
    piece(x.b, "*C(m)");
    piece(x.c, "*pi*C(m)");
    return s.empty() ? "0" : s;
}

double re_trace(const Eigen::MatrixXcd& a) { return a.trace().real(); }

}  // namespace

double CliffordConstant::value() const {
    double v = rational.to_double();
    if (pi_power == -1) v /= std::numbers::pi;
    return v;
}

CliffordConstant clifford_constant(int m) {
    if (m < 1) throw InvalidInput("C(m) needs m >= 1");
    if (m > 40) throw InvalidInput("C(m) is tabulated exactly for m <= 40");
    // C(1) = 1, C(2) = 2/pi, C(m+2) = C(m) m/(m+1)
    CliffordConstant c{m % 2 == 1 ? R(1) : R(2), m % 2 == 1 ? 0 : -1};
    for (int k = m % 2 == 1 ? 1 : 2; k < m; k += 2) c.rational = c.rational * R(k, k + 1);
    return c;
}

void validate(const SpectralBCData& d) {
    if (d.m <= 3) {
        throw InvalidInput("spectral boundary conditions need m >= 4, got m = " + std::to_string(d.m));
    }
    const auto n = d.psi_hat.rows();
    if (n == 0 || d.psi_hat.cols() != n) throw InvalidInput("psi_hat must be a non-empty square matrix");
    if (d.theta.rows() != n || d.theta.cols() != n) throw InvalidInput("Theta must match psi_hat in size");
    if (static_cast<int>(d.gammas.size()) != d.m - 1) {
        throw InvalidInput("expected " + std::to_string(d.m - 1) + " tangential gammas, got " +
                           std::to_string(d.gammas.size()));
    }
    for (const auto& g : d.gammas) {
        if (g.rows() != n || g.cols() != n) throw InvalidInput("gamma matrices must match psi_hat in size");
        if ((g + g.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvalidInput("gamma_a must be skew-adjoint");
    }
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    for (std::size_t a = 0; a < d.gammas.size(); ++a) {
        for (std::size_t b = a; b < d.gammas.size(); ++b) {
            Eigen::MatrixXcd anti = d.gammas[a] * d.gammas[b] + d.gammas[b] * d.gammas[a];
            if (a == b) anti += 2.0 * I;
            if (anti.cwiseAbs().maxCoeff() > tol) {
                throw InvalidInput("gammas violate gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab at (" +
                                   std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            }
        }
    }
    if ((d.theta - d.theta.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvalidInput("Theta must be self-adjoint");
    if (!(d.boundary_measure >= 0.0)) throw InvalidInput("boundary measure must be non-negative");
}

CoefficientReport spectral_coefficient(int n, const SpectralBCData& d, const SmearingJets& f,
                                       const GeometryInvariants& geo) {
    validate(d);
    if (geo.m != d.m) throw InvalidInput("spectral_coefficient: geometry and boundary data disagree on m");
    if (n < 0) throw InvalidInput("spectral_coefficient: negative order");
    if (n > 3) {
        throw UnsupportedOrder("spectral_coefficient: a_" + std::to_string(n) + " is not available (max a_3)", n);
    }
    const int m = d.m;
    const auto cc = clifford_constant(m);
    const double C = cc.value();
    const double dim = static_cast<double>(d.psi_hat.rows());
    const double V = d.boundary_measure;

    if (n == 0) {
        GeometryInvariants g = geo;
        for (auto& r : g.regions) r.fiber_dim = static_cast<int>(dim);
        return interior_coefficient(0, g, f);
    }

    auto rep = make_report("trace", n, n % 2 == 0 ? -m : 1 - m);
    const double norm = rep.normalization;
    auto add = [](PartBuilder& b, const std::string& lbl, Affine coef, double C, double monomial) {
        b.add(lbl, R(1), eval(coef, C), label(coef), monomial);
    };

    if (n == 1) {
        PartBuilder b("boundary:spectral");
        add(b, "f", {R(-1, 4), R(1, 4), R(0)}, C, f.f * dim * V);
        add_part(rep, std::move(b).finish(norm));
        return rep;
    }

    const Eigen::MatrixXcd& P = d.psi_hat;
    const Eigen::MatrixXcd Ps = P.adjoint();

    if (n == 2) {
        GeometryInvariants g = geo;
        for (auto& r : g.regions) r.fiber_dim = static_cast<int>(dim);
        rep = merge(rep, interior_coefficient(2, g, f));
        PartBuilder b("boundary:spectral");
        add(b, "f (psi + psi*)", {R(1, 2), R(0), R(0)}, C, f.f * re_trace(P + Ps) * V);
        add(b, "f L_aa", {R(1, 3), R(0), R(-1, 4)}, C, f.f * d.Laa * dim * V);
        const R k = R(-(m - 1), 2 * (m - 2));
        add(b, "f;m", {k, R(0), k * R(-1, 2)}, C, f.f_m * dim * V);
        add_part(rep, std::move(b).finish(norm));
        return rep;
    }

    // n == 3
    Eigen::MatrixXcd gPgP = Eigen::MatrixXcd::Zero(P.rows(), P.cols());
    Eigen::MatrixXcd gPsgPs = gPgP, gPgPs = gPgP, gTgT = gPgP;
    for (const auto& g : d.gammas) {
        gPgP += g * P * g * P;
        gPsgPs += g * Ps * g * Ps;
        gPgPs += g * P * g * Ps;
        gTgT += g * d.theta * g * d.theta;
    }
    const R m2(1, m - 2);
    const double w = f.f * V;
    PartBuilder b("boundary:spectral");
    add(b, "f (psi psi + psi* psi*)", {R(1, 32), R(-1, 32) * m2, R(0)}, C, w * re_trace(P * P + Ps * Ps));
    add(b, "f psi psi*", {R(5 - 2 * m, 16), R(7 - 8 * m + 2 * m * m, 16) * m2, R(0)}, C, w * re_trace(P * Ps));
    add(b, "f (g psi g psi + g psi* g psi*)",
        {R(2 * m - 3, 32 * (m - 1)), R(-(2 * m * m - 6 * m + 5), 32 * (m - 1)) * m2, R(0)}, C,
        w * re_trace(gPgP + gPsgPs));
    add(b, "f g psi g psi*", {R(1, 16 * (m - 1)), R(3 - 2 * m, 16 * (m - 1)) * m2, R(0)}, C, w * re_trace(gPgPs));
    add(b, "f tau", {R(1, 48), R(-(m - 1), 48) * m2, R(0)}, C, w * d.tau * dim);
    add(b, "f rho_mm", {R(1, 48), R(-(4 * m - 10), 48) * m2, R(0)}, C, w * d.rho_mm * dim);
    add(b, "f L_ab L_ab", {R(17 + 5 * m, 4 * 48 * (m + 1)), R(23 - 2 * m - 4 * m * m, 48 * (m + 1)) * m2, R(0)}, C,
        w * d.LabLab * dim);
    add(b, "f L_aa L_bb",
        {R(-(17 + 7 * m * m), 8 * 48 * (m * m - 1)), R(4 * m * m * m - 11 * m * m + 5 * m - 1, 48 * (m * m - 1)) * m2,
         R(0)},
        C, w * d.LaaLbb * dim);
    add(b, "f Theta Theta", {R(0), R(1, 8) * m2, R(0)}, C, w * re_trace(d.theta * d.theta));
    add(b, "f g Theta g Theta", {R(0), R(1, 8) * m2 * R(1, m - 1), R(0)}, C, w * re_trace(gTgT));
    add(b, "L_aa f;m", {R(5 * m - 7, 64 * (m - 3)), R(-(5 * m - 9), 24 * (m - 3)), R(0)}, C,
        d.Laa * f.f_m * dim * V);
    add(b, "f;mm", {R(-(m - 1), 16 * (m - 3)), R(2 * (m - 1), 16 * (m - 3)), R(0)}, C, f.f_mm * dim * V);
    add_part(rep, std::move(b).finish(norm));
    return rep;
}

}  // namespace heatcoeff
