#include "heatcoeff/rod.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

Profile::Profile(double constant) {
    if (constant != 0.0) poly_.push_back(constant);
}

Profile Profile::polynomial(std::vector<double> coefficients) {
    Profile p;
    p.poly_ = std::move(coefficients);
    return p;
}

Profile& Profile::add_trig(double a_cos, double b_sin, double omega) {
    trig_.push_back({a_cos, b_sin, omega});
    return *this;
}

double Profile::operator()(double x, int k) const {
    double v = 0.0;
    // d^k/dx^k of sum c_j x^j, Horner on the differentiated coefficients
    for (std::size_t j = poly_.size(); j-- > static_cast<std::size_t>(k);) {
        double c = poly_[j];
        for (int i = 0; i < k; ++i) c *= static_cast<double>(j - static_cast<std::size_t>(i));
        v = v * x + c;
    }
    for (const auto& t : trig_) {
        const double wk = std::pow(t.omega, k);
        const double c = std::cos(t.omega * x), s = std::sin(t.omega * x);
        // derivative cycle: cos -> -sin -> -cos -> sin
        double dc = 0.0, ds = 0.0;
        switch (k % 4) {
            case 0: dc = c; ds = s; break;
            case 1: dc = -s; ds = c; break;
            case 2: dc = -c; ds = -s; break;
            case 3: dc = s; ds = -c; break;
        }
        v += wk * (t.a_cos * dc + t.b_sin * ds);
    }
    return v;
}

bool Profile::is_zero() const {
    for (double c : poly_) {
        if (c != 0.0) return false;
    }
    for (const auto& t : trig_) {
        if (t.a_cos != 0.0 || t.b_sin != 0.0) return false;
    }
    return true;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14, &err);
}

void RodProblem::validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("rod length must be positive");
    for (const RodEnd* e : {&left, &right}) {
        if (e->kind != BoundaryKind::Dirichlet && e->kind != BoundaryKind::Robin) {
            throw InvalidInput("rod ends must be dirichlet or robin");
        }
    }
}

TimePerturbation RodProblem::time_perturbation() const {
    TimePerturbation tp;
    tp.G1_ii = G1;
    tp.G1_ij_sq = G1 * G1;
    tp.E1 = E1;
    tp.G1_mm = G1;
    return tp;
}

RodContentSetup rod_content_setup(const RodProblem& rod) {
    rod.validate();
    RodContentSetup out;
    const double params[] = {rod.L};
    out.cat = catalog_geometry("interval", params);
    out.tp = rod.time_perturbation();
    const auto& phi = rod.phi;
    const auto& rho = rod.rho;
    const auto& E = rod.E;

    // D g = -(g'' + E g), scalar and self-dual
    auto D = [&](const Profile& g, double x) { return -(g(x, 2) + E(x) * g(x)); };
    auto D_prime = [&](const Profile& g, double x) { return -(g(x, 3) + E(x, 1) * g(x) + E(x) * g(x, 1)); };

    auto& in = out.data.interior;
    const double L = rod.L;
    in.phi_rho = integrate([&](double x) { return phi(x) * rho(x); }, 0.0, L);
    in.Dphi_rho = integrate([&](double x) { return D(phi, x) * rho(x); }, 0.0, L);
    in.p0_rho = integrate([&](double x) { return rod.p0(x) * rho(x); }, 0.0, L);
    in.p1_rho = integrate([&](double x) { return rod.p1(x) * rho(x); }, 0.0, L);
    in.Dp0_rho = integrate([&](double x) { return D(rod.p0, x) * rho(x); }, 0.0, L);
    in.Dphi_Drho = integrate([&](double x) { return D(phi, x) * D(rho, x); }, 0.0, L);
    in.Tphi_rho = integrate(
        [&](double x) { return (rod.G1 * phi(x, 2) + rod.F1 * phi(x, 1) + rod.E1 * phi(x)) * rho(x); }, 0.0, L);

    for (int side = 0; side < 2; ++side) {
        const RodEnd& end = side == 0 ? rod.left : rod.right;
        const double x = side == 0 ? 0.0 : L;
        const double sg = side == 0 ? 1.0 : -1.0;  // d/dm = sg d/dx
        auto& comp = out.cat.boundary[static_cast<std::size_t>(side)];
        comp.kind = end.kind;
        comp.S = end.kind == BoundaryKind::Robin ? end.S : 0.0;
        comp.E_b = E(x);
        comp.E_m = sg * E(x, 1);
        TimePerturbation ctp = out.tp;
        ctp.F1_m = sg * rod.F1;
        comp.time = ctp;

        BoundaryPairings b;
        const double r = rho(x), r_m = sg * rho(x, 1);
        b.psi1_rho = end.psi1 * r;
        if (end.kind == BoundaryKind::Dirichlet) {
            const double d = phi(x) - end.psi0;
            b.d_rho = d * r;
            b.d_rho_m = d * r_m;
            b.p0_rho = rod.p0(x) * r;
            b.p0_rho_m = rod.p0(x) * r_m;
            b.psi1_rho_m = end.psi1 * r_m;
            b.Dphi_rho = D(phi, x) * r;
            b.d_Drho = d * D(rho, x);
            b.Dphi_m_rho = sg * D_prime(phi, x) * r;
            b.d_Drho_m = d * sg * D_prime(rho, x);
        } else {
            const double bphi = sg * phi(x, 1) + end.S * phi(x) - end.psi0;
            const double brho = sg * rho(x, 1) + end.S * r;
            const double bp0 = sg * rod.p0(x, 1) + end.S * rod.p0(x);
            b.b_rho = bphi * r;
            b.b_Brho = bphi * brho;
            b.Bp0_rho = bp0 * r;
            b.b_Drho = bphi * D(rho, x);
            b.Dphi_Brho = D(phi, x) * brho;
        }
        out.data.boundary.push_back(b);
    }
    return out;
}

}  // namespace heatcoeff
