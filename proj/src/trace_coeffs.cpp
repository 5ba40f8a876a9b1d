#include "heatcoeff/trace_coeffs.hpp"

#include <numbers>
#include <string>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

namespace {

using R = Rational;

void require_order(int n, int max, const char* what) {
    if (n < 0) throw InvalidInput(std::string(what) + ": negative order");
    if (n > max) {
        throw UnsupportedOrder(std::string(what) + ": a_" + std::to_string(n) + " is not available (max a_" +
                                   std::to_string(max) + ")",
                               n);
    }
}

// Tangential contractions vanish when there are no tangential directions.
BoundaryComponentData effective(const BoundaryComponentData& c, int m) {
    if (m > 1) return c;
    BoundaryComponentData e = c;
    e.Laa = e.LabLab = e.LaaLbb = e.LaaLbbLcc = e.LabLabLcc = e.LabLbcLac = 0.0;
    e.Laa_bb = e.Lab_ab = 0.0;
    e.tau = e.rho_mm = e.R_ambm_Lab = e.R_abcb_Lac = e.tau_m = 0.0;
    e.S_aa = 0.0;
    return e;
}

TimePerturbation effective(const TimePerturbation& tp, int m) {
    if (m > 1) return tp;
    TimePerturbation e = tp;
    e.G1_aa = e.G1_ab_Lab = e.G1_aa_m = e.G1_am_a = e.T_a = 0.0;
    return e;
}

void check_dirichlet_robin(const BoundaryComponentData& c, const char* what) {
    if (c.kind == BoundaryKind::Dirichlet || c.kind == BoundaryKind::Robin) return;
    if (c.kind == BoundaryKind::DNJunction) {
        throw InvalidInput(std::string(what) + ": component '" + c.label +
                           "' is a D/N junction; use dn_coefficient");
    }
    throw InvalidInput(std::string(what) + ": component '" + c.label + "' has kind " +
                       std::string(to_string(c.kind)) + ", expected dirichlet or robin");
}

Part static_interior_part(int n, const Region& r, const SmearingJets& jets, double norm) {
    PartBuilder b("interior");
    const double f = jets.f;
    const double w = r.measure * r.fiber_dim;  // integral of Tr(1)
    switch (n) {
        case 0: b.add("f", R(1), f * w); break;
        case 2:
            b.add("f tau", R(1, 6), f * r.tau * w);
            b.add("f E", R(1), f * r.E * w);
            break;
        case 4: {
            const R c(1, 360);
            b.add("f E;kk", c * 60, f * r.E_lap * w);
            b.add("f tau E", c * 60, f * r.tau * r.E * w);
            b.add("f E^2", c * 180, f * r.E * r.E * w);
            b.add("f Omega_ij Omega_ij", c * 30, f * r.omega_sq * r.measure);
            b.add("f tau;kk", c * 12, f * r.tau_lap * w);
            b.add("f tau^2", c * 5, f * r.tau * r.tau * w);
            b.add("f |rho|^2", c * -2, f * r.rho_sq * w);
            b.add("f |R|^2", c * 2, f * r.riem_sq * w);
            break;
        }
        default: break;  // odd orders vanish
    }
    return std::move(b).finish(norm);
}

Part time_interior_part(int n, const Region& r, const TimePerturbation& tp, const SmearingJets& jets,
                        double norm) {
    PartBuilder b("interior:time");
    const double f = jets.f;
    const double w = r.measure * r.fiber_dim;
    if (n == 2) {
        b.add("f G1_ii", R(1, 6) * R(3, 2), f * tp.G1_ii * w);
    } else if (n == 4) {
        const R c(1, 360);
        b.add("f G1_ii G1_jj", c * R(45, 4), f * tp.G1_ii * tp.G1_ii * w);
        b.add("f G1_ij G1_ij", c * R(45, 2), f * tp.G1_ij_sq * w);
        b.add("f G2_ii", c * 60, f * tp.G2_ii * w);
        b.add("f E1", c * -180, f * tp.E1 * w);
        b.add("f G1_ii R_jkkj", c * 15, f * tp.G1_ii * r.tau * w);
        b.add("f G1_ij R_ikkj", c * -30, f * tp.G1_ij_Rikkj * w);
        b.add("f G1_ii E", c * 90, f * tp.G1_ii * r.E * w);
        b.add("f F1_i;i", c * 60, f * tp.F1_i_i * w);
        b.add("f G1_ii;jj", c * 15, f * tp.G1_ii_jj * w);
        b.add("f G1_ij;ij", c * -30, f * tp.G1_ij_ij * w);
    }
    return std::move(b).finish(norm);
}

Part static_boundary_part(int n, const BoundaryComponentData& c, const SmearingJets& jets, double norm) {
    PartBuilder b("boundary:" + c.label);
    const double w = c.measure * c.fiber_dim;
    const double f = jets.f, fm = jets.f_m, fmm = jets.f_mm, fiim = jets.f_iim;
    const bool dir = c.kind == BoundaryKind::Dirichlet;
    const double S = c.S, E = c.E_b;
    switch (n) {
        case 1: b.add("f", dir ? R(-1, 4) : R(1, 4), f * w); break;
        case 2: {
            const R k(1, 6);
            b.add("f L_aa", k * 2, f * c.Laa * w);
            if (!dir) b.add("f S", k * 12, f * S * w);
            b.add("f;m", dir ? k * -3 : k * 3, fm * w);
            break;
        }
        case 3: {
            const R k = dir ? R(-1, 384) : R(1, 384);
            b.add("f E", k * 96, f * E * w);
            b.add("f tau", k * 16, f * c.tau * w);
            b.add("f rho_mm", k * -8, f * c.rho_mm * w);
            if (dir) {
                b.add("f L_aa L_bb", k * 7, f * c.LaaLbb * w);
                b.add("f L_ab L_ab", k * -10, f * c.LabLab * w);
                b.add("f;m L_aa", k * -30, fm * c.Laa * w);
            } else {
                b.add("f L_aa L_bb", k * 13, f * c.LaaLbb * w);
                b.add("f L_ab L_ab", k * 2, f * c.LabLab * w);
                b.add("f S L_aa", k * 96, f * S * c.Laa * w);
                b.add("f S^2", k * 192, f * S * S * w);
                b.add("f;m L_aa", k * 6, fm * c.Laa * w);
                b.add("f;m S", k * 96, fm * S * w);
            }
            b.add("f;mm", k * 24, fmm * w);
            break;
        }
        case 4: {
            const R k(1, 360);
            if (dir) {
                b.add("f E;m", k * -120, f * c.E_m * w);
                b.add("f E L_aa", k * 120, f * E * c.Laa * w);
                b.add("f tau;m", k * -18, f * c.tau_m * w);
                b.add("f tau L_aa", k * 20, f * c.tau * c.Laa * w);
                b.add("f rho_mm L_bb", k * -4, f * c.rho_mm * c.Laa * w);
                b.add("f R_ambm L_ab", k * -12, f * c.R_ambm_Lab * w);
                b.add("f R_abcb L_ac", k * 4, f * c.R_abcb_Lac * w);
                b.add("f L_aa:bb", k * 24, f * c.Laa_bb * w);
                b.add("f L_aa L_bb L_cc", k * R(40, 21), f * c.LaaLbbLcc * w);
                b.add("f L_ab L_ab L_cc", k * R(-88, 7), f * c.LabLabLcc * w);
                b.add("f L_ab L_bc L_ac", k * R(320, 21), f * c.LabLbcLac * w);
                b.add("f;m E", k * -180, fm * E * w);
                b.add("f;m tau", k * -30, fm * c.tau * w);
                b.add("f;m L_aa L_bb", k * R(-180, 7), fm * c.LaaLbb * w);
                b.add("f;m L_ab L_ab", k * R(60, 7), fm * c.LabLab * w);
                b.add("f;mm L_aa", k * 24, fmm * c.Laa * w);
                b.add("f;iim", k * -30, fiim * w);
            } else {
                b.add("f E;m", k * 240, f * c.E_m * w);
                b.add("f E L_aa", k * 120, f * E * c.Laa * w);
                b.add("f tau;m", k * 42, f * c.tau_m * w);
                b.add("f L_aa:bb", k * 24, f * c.Laa_bb * w);
                b.add("f tau L_aa", k * 20, f * c.tau * c.Laa * w);
                b.add("f rho_mm L_bb", k * -4, f * c.rho_mm * c.Laa * w);
                b.add("f R_ambm L_ab", k * -12, f * c.R_ambm_Lab * w);
                b.add("f R_abcb L_ac", k * 4, f * c.R_abcb_Lac * w);
                b.add("f L_aa L_bb L_cc", k * R(40, 3), f * c.LaaLbbLcc * w);
                b.add("f L_ab L_ab L_cc", k * 8, f * c.LabLabLcc * w);
                b.add("f L_ab L_bc L_ac", k * R(32, 3), f * c.LabLbcLac * w);
                b.add("f S E", k * 720, f * S * E * w);
                b.add("f S tau", k * 120, f * S * c.tau * w);
                b.add("f S L_aa L_bb", k * 144, f * S * c.LaaLbb * w);
                b.add("f S L_ab L_ab", k * 48, f * S * c.LabLab * w);
                b.add("f S^2 L_aa", k * 480, f * S * S * c.Laa * w);
                b.add("f S^3", k * 480, f * S * S * S * w);
                b.add("f S:aa", k * 120, f * c.S_aa * w);
                b.add("f;m E", k * 180, fm * E * w);
                b.add("f;m S L_aa", k * 72, fm * S * c.Laa * w);
                b.add("f;m S^2", k * 240, fm * S * S * w);
                b.add("f;m tau", k * 30, fm * c.tau * w);
                b.add("f;m L_aa L_bb", k * 12, fm * c.LaaLbb * w);
                b.add("f;m L_ab L_ab", k * 12, fm * c.LabLab * w);
                b.add("f;mm S", k * 120, fmm * S * w);
                b.add("f;mm L_aa", k * 24, fmm * c.Laa * w);
                b.add("f;iim", k * 30, fiim * w);
            }
            break;
        }
        default: break;  // a_0 has no boundary term
    }
    return std::move(b).finish(norm);
}

Part time_boundary_part(int n, const BoundaryComponentData& c, const TimePerturbation& tp,
                        const SmearingJets& jets, double norm) {
    PartBuilder b("boundary:" + c.label + ":time");
    const double w = c.measure * c.fiber_dim;
    const double f = jets.f, fm = jets.f_m;
    const bool dir = c.kind == BoundaryKind::Dirichlet;
    if (n == 3) {
        b.add("f G1_aa", R(1, 384) * (dir ? -24 : 24), f * tp.G1_aa * w);
    } else if (n == 4) {
        const R k(1, 360);
        if (dir) {
            b.add("f G1_aa L_bb", k * 30, f * tp.G1_aa * c.Laa * w);
            b.add("f G1_mm L_bb", k * -60, f * tp.G1_mm * c.Laa * w);
            b.add("f G1_ab L_ab", k * 30, f * tp.G1_ab_Lab * w);
            b.add("f G1_mm;m", k * 30, f * tp.G1_mm_m * w);
            b.add("f G1_aa;m", k * -30, f * tp.G1_aa_m * w);
            b.add("f G1_am;a", k * 0, f * tp.G1_am_a * w);
            b.add("f F1_m", k * -30, f * tp.F1_m * w);
            b.add("f;m G1_aa", k * -45, fm * tp.G1_aa * w);
            b.add("f;m G1_mm", k * 45, fm * tp.G1_mm * w);
        } else {
            b.add("f G1_aa L_bb", k * 30, f * tp.G1_aa * c.Laa * w);
            b.add("f G1_mm L_bb", k * 120, f * tp.G1_mm * c.Laa * w);
            b.add("f G1_ab L_ab", k * -150, f * tp.G1_ab_Lab * w);
            b.add("f G1_mm;m", k * -60, f * tp.G1_mm_m * w);
            b.add("f G1_aa;m", k * 60, f * tp.G1_aa_m * w);
            b.add("f F1_m", k * 150, f * tp.F1_m * w);
            b.add("f S G1_aa", k * 180, f * c.S * tp.G1_aa * w);
            b.add("f S G1_mm", k * -180, f * c.S * tp.G1_mm * w);
            b.add("f S1", k * 360, f * tp.S1 * w);
            b.add("f;m G1_aa", k * 45, fm * tp.G1_aa * w);
            b.add("f;m G1_mm", k * -45, fm * tp.G1_mm * w);
        }
    }
    return std::move(b).finish(norm);
}

Part transmittal_part(int n, const std::string& label, const TransmittalData& td, const SmearingJets& jets,
                      double norm) {
    PartBuilder b("interface:" + label);
    const double w = td.measure * td.fiber_dim;
    const double f = jets.f;
    const double Lsum = td.Lp_aa + td.Lm_aa;
    const double fjet = td.fjet_plus + td.fjet_minus;
    if (n == 2) {
        const R k(1, 6);
        b.add("f (L+_aa + L-_aa)", k * 2, f * Lsum * w);
        b.add("f Xi", k * -6, f * td.Xi * w);
    } else if (n == 3) {
        const R k(1, 384);
        b.add("f (L+_aa L+_bb + L-_aa L-_bb + 2 L+_aa L-_bb)", k * R(3, 2),
              f * (td.Lp_aa * td.Lp_aa + td.Lm_aa * td.Lm_aa + 2.0 * td.Lpm_aa_bb) * w);
        b.add("f (L+_ab L+_ab + L-_ab L-_ab + 2 L+_ab L-_ab)", k * 3,
              f * (td.Lp_ab_sq + td.Lm_ab_sq + 2.0 * td.Lpm_ab_ab) * w);
        b.add("(L+_aa + L-_aa)(f+;nu+ + f-;nu-)", k * 9, Lsum * fjet * w);
        b.add("f Xi^2", k * 48, f * td.Xi * td.Xi * w);
        b.add("f omega_a omega_a", k * 24, f * td.omega_sq * td.measure);
        b.add("f (L+_aa + L-_aa) Xi", k * -24, f * Lsum * td.Xi * w);
        b.add("(f+;nu+ + f-;nu-) Xi", k * -24, fjet * td.Xi * w);
    }
    return std::move(b).finish(norm);
}

}  // namespace

int trace_normalization_twice_exponent(int n, int m) { return n % 2 == 0 ? -m : 1 - m; }

TransmittalData smooth_gluing(double measure, double Lp_aa, double Lp_ab_sq, double Xi) {
    TransmittalData td;
    td.measure = measure;
    td.Xi = Xi;
    td.Lp_aa = Lp_aa;
    td.Lm_aa = -Lp_aa;
    td.Lp_ab_sq = Lp_ab_sq;
    td.Lm_ab_sq = Lp_ab_sq;
    td.Lpm_aa_bb = -(Lp_aa * Lp_aa);
    td.Lpm_ab_ab = -Lp_ab_sq;
    return td;
}

CoefficientReport interior_coefficient(int n, const GeometryInvariants& geo, const SmearingJets& f) {
    require_order(n, 4, "interior_coefficient");
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    for (const auto& r : geo.regions) add_part(rep, static_interior_part(n, r, r.jets.value_or(f), rep.normalization));
    return rep;
}

CoefficientReport boundary_coefficient(int n, const GeometryInvariants& geo,
                                       std::span<const BoundaryComponentData> components,
                                       const SmearingJets& f) {
    require_order(n, 4, "boundary_coefficient");
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    for (const auto& c : components) check_dirichlet_robin(c, "boundary_coefficient");
    for (const auto& c : components) {
        add_part(rep, static_boundary_part(n, effective(c, geo.m), c.jets.value_or(f), rep.normalization));
    }
    return rep;
}

CoefficientReport transmittal_coefficient(int n, const GeometryInvariants& geo, const TransmittalData& td,
                                          const SmearingJets& f) {
    require_order(n, 3, "transmittal_coefficient");
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    TransmittalData e = td;
    if (geo.m == 1) {
        e.Lp_aa = e.Lm_aa = e.Lp_ab_sq = e.Lm_ab_sq = e.Lpm_aa_bb = e.Lpm_ab_ab = e.omega_sq = 0.0;
    }
    add_part(rep, transmittal_part(n, "sigma", e, f, rep.normalization));
    return rep;
}

CoefficientReport time_dependent_interior(int n, const GeometryInvariants& geo, const TimePerturbation& tp,
                                          const SmearingJets& f) {
    require_order(n, 4, "time_dependent_interior");
    if (n % 2 != 0) {
        throw InvalidInput("time_dependent_interior: interior corrections exist only for even n, got " +
                           std::to_string(n));
    }
    auto rep = interior_coefficient(n, geo, f);
    for (const auto& r : geo.regions) {
        add_part(rep, time_interior_part(n, r, tp, r.jets.value_or(f), rep.normalization));
    }
    return rep;
}

CoefficientReport time_dependent_boundary(int n, const GeometryInvariants& geo,
                                          std::span<const BoundaryComponentData> components,
                                          const TimePerturbation& tp, const SmearingJets& f) {
    require_order(n, 4, "time_dependent_boundary");
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    for (const auto& c : components) check_dirichlet_robin(c, "time_dependent_boundary");
    for (const auto& c : components) {
        const auto eff = effective(c, geo.m);
        const auto jets = c.jets.value_or(f);
        add_part(rep, static_boundary_part(n, eff, jets, rep.normalization));
        add_part(rep, time_boundary_part(n, eff, effective(c.time.value_or(tp), geo.m), jets, rep.normalization));
    }
    return rep;
}

CoefficientReport dn_coefficient(int n, const GeometryInvariants& geo, const BoundaryComponentData& junction,
                                 const SmearingJets& f) {
    if (junction.kind != BoundaryKind::DNJunction) {
        throw InvalidInput("dn_coefficient: component '" + junction.label + "' is not a D/N junction");
    }
    if (n < 0) throw InvalidInput("dn_coefficient: negative order");
    if (n >= 3) throw NotLocallyComputable(n);
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    PartBuilder b("junction:" + junction.label);
    if (n == 2) {
        const auto jets = junction.jets.value_or(f);
        b.add("f", R(-1, 4), std::numbers::pi, "pi", jets.f * junction.measure * junction.fiber_dim);
        b.conjectural();
    }
    add_part(rep, std::move(b).finish(rep.normalization));
    return rep;
}

CoefficientReport trace_coefficient(int n, const CatalogGeometry& cat, const TimePerturbation& tp,
                                    const SmearingJets& f) {
    require_order(n, 4, "trace_coefficient");
    const auto& geo = cat.geometry;
    auto rep = make_report("trace", n, trace_normalization_twice_exponent(n, geo.m));
    const bool timed = !tp.is_static();
    for (const auto& r : geo.regions) {
        const auto jets = r.jets.value_or(f);
        add_part(rep, static_interior_part(n, r, jets, rep.normalization));
        if (timed && n % 2 == 0) add_part(rep, time_interior_part(n, r, tp, jets, rep.normalization));
    }
    for (const auto& c : cat.boundary) {
        const auto jets = c.jets.value_or(f);
        switch (c.kind) {
            case BoundaryKind::Dirichlet:
            case BoundaryKind::Robin: {
                const auto eff = effective(c, geo.m);
                add_part(rep, static_boundary_part(n, eff, jets, rep.normalization));
                const auto ctp = c.time.value_or(tp);
                if (!ctp.is_static()) {
                    add_part(rep, time_boundary_part(n, eff, effective(ctp, geo.m), jets, rep.normalization));
                }
                break;
            }
            case BoundaryKind::Transmittal: {
                if (!c.interface) throw InvalidInput("transmittal component '" + c.label + "' has no interface data");
                if (n > 3) {
                    throw UnsupportedOrder("transmittal interface: a_" + std::to_string(n) + " is not available (max a_3)",
                                           n);
                }
                if (timed) throw InvalidInput("time-dependent corrections are not available for transmittal interfaces");
                TransmittalData td = *c.interface;
                if (geo.m == 1) td.Lp_aa = td.Lm_aa = td.Lp_ab_sq = td.Lm_ab_sq = td.Lpm_aa_bb = td.Lpm_ab_ab = td.omega_sq = 0.0;
                add_part(rep, transmittal_part(n, c.label, td, jets, rep.normalization));
                break;
            }
            case BoundaryKind::DNJunction: {
                auto j = dn_coefficient(n, geo, c, f);
                for (auto& p : j.parts) add_part(rep, p);
                break;
            }
            case BoundaryKind::SpectralBC:
                throw InvalidInput("spectral boundary conditions are evaluated by spectral_coefficient");
        }
    }
    return rep;
}

}  // namespace heatcoeff
