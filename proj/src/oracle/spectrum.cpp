#include "heatcoeff/oracle/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include "heatcoeff/errors.hpp"

namespace heatcoeff::oracle {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double bracket_root(F f, double lo, double hi, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NumericalFailure(std::string(what) + ": root not bracketed in [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
    }
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return 0.5 * (r.first + r.second);
}

double left_angle(EndCondition e) { return e.kind == BoundaryKind::Dirichlet ? 0.0 : std::atan2(1.0, -e.S); }
double right_angle(EndCondition e) { return e.kind == BoundaryKind::Dirichlet ? pi : std::atan2(1.0, e.S); }

void check_end(EndCondition e, const char* where) {
    if (e.kind != BoundaryKind::Dirichlet && e.kind != BoundaryKind::Robin) {
        throw InvalidInput(std::string(where) + ": end condition must be dirichlet or robin");
    }
    if (!std::isfinite(e.S)) throw InvalidInput(std::string(where) + ": S must be finite");
}


struct Levels {
    std::vector<double> values;
    std::vector<std::uint64_t> mult;
    void push(double v, std::uint64_t m) {
        values.push_back(v);
        mult.push_back(m);
    }
};

Levels sorted(Levels in) {
    std::vector<std::size_t> idx(in.values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return in.values[a] < in.values[b]; });
    Levels out;
    for (std::size_t i : idx) {
        if (!out.values.empty() && out.values.back() == in.values[i]) {
            out.mult.back() += in.mult[i];
        } else {
            out.push(in.values[i], in.mult[i]);
        }
    }
    return out;
}

Levels circle_levels(double L, double lambda_max) {
    Levels lv;
    const double w = 2.0 * pi / L;
    for (std::uint64_t j = 0;; ++j) {
        const double v = (w * static_cast<double>(j)) * (w * static_cast<double>(j));
        if (v > lambda_max) break;
        lv.push(v, j == 0 ? 1 : 2);
    }
    return lv;
}

Levels interval_levels(double L, EndCondition a, EndCondition b, double lambda_max) {
    Levels lv;
    for (double v : interval_eigenvalues(L, a, b, lambda_max)) lv.push(v, 1);
    return lv;
}

Levels product(const Levels& x, const Levels& y, double lambda_max) {
    Levels out;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        for (std::size_t k = 0; k < y.values.size(); ++k) {
            const double v = x.values[i] + y.values[k];
            if (v > lambda_max) break;  // y ascending
            out.push(v, x.mult[i] * y.mult[k]);
        }
    }
    return sorted(std::move(out));
}

using CountBound = CountingBound;

CountBound times(CountBound p, CountBound q) {
    // (p.b s + p.c)(q.b s + q.c) for one-dimensional factors (a = 0)
    return {p.b * q.b, p.b * q.c + p.c * q.b, p.c * q.c};
}

CountBound count_bound_impl(const SpectrumSpec& s) {
    const auto& p = s.params;
    switch (s.problem) {
        case Problem::Interval: return {0.0, p[0] / pi, 2.0};
        case Problem::Circle: return {0.0, p[0] / pi, 1.0};
        case Problem::DeltaCircle: return {0.0, p[0] / pi, 2.0};
        case Problem::Rectangle: return times({0.0, p[0] / pi, 2.0}, {0.0, p[1] / pi, 2.0});
        case Problem::FlatTorus: return times({0.0, p[0] / pi, 1.0}, {0.0, p[1] / pi, 1.0});
        case Problem::Cylinder: return times({0.0, 2.0 * p[0], 1.0}, {0.0, p[1] / pi, 2.0});
        case Problem::Disk: return {p[0] * p[0] / 4.0, p[0], 1.0};
        case Problem::Sphere:
        case Problem::Hemisphere: return {p[0] * p[0], 2.0 * p[0], 1.0};
    }
    return {};
}

Levels raw_levels(const SpectrumSpec& s, double lambda_max) {
    const auto& p = s.params;
    switch (s.problem) {
        case Problem::Interval: return interval_levels(p[0], s.left, s.right, lambda_max);
        case Problem::Circle: return circle_levels(p[0], lambda_max);
        case Problem::Rectangle:
            return product(interval_levels(p[0], s.left, s.left, lambda_max),
                           interval_levels(p[1], s.left, s.left, lambda_max), lambda_max);
        case Problem::FlatTorus:
            return product(circle_levels(p[0], lambda_max), circle_levels(p[1], lambda_max), lambda_max);
        case Problem::Cylinder:
            return product(circle_levels(2.0 * pi * p[0], lambda_max),
                           interval_levels(p[1], s.left, s.right, lambda_max), lambda_max);
        case Problem::Disk: {
            const double R = p[0];
            const auto zeros = bessel_zeros(std::sqrt(lambda_max) * R);
            Levels lv;
            for (std::size_t nu = 0; nu < zeros.size(); ++nu) {
                for (double j : zeros[nu]) lv.push((j / R) * (j / R), nu == 0 ? 1 : 2);
            }
            return sorted(std::move(lv));
        }
        case Problem::Sphere:
        case Problem::Hemisphere: {
            const double R2 = p[0] * p[0];
            const bool hemi = s.problem == Problem::Hemisphere;
            const bool dir = s.left.kind == BoundaryKind::Dirichlet;
            Levels lv;
            for (std::uint64_t l = 0;; ++l) {
                const double v = static_cast<double>(l) * static_cast<double>(l + 1) / R2;
                if (v > lambda_max) break;
                const std::uint64_t m = hemi ? (dir ? l : l + 1) : 2 * l + 1;
                if (m > 0) lv.push(v, m);
            }
            return lv;
        }
        case Problem::DeltaCircle: {
            const double L = p[0], Xi = p[1];
            Levels lv;
            const double w = 2.0 * pi / L;
            for (std::uint64_t j = 1;; ++j) {  // odd modes
                const double v = (w * static_cast<double>(j)) * (w * static_cast<double>(j));
                if (v > lambda_max) break;
                lv.push(v, 1);
            }
            const double theta_max = std::sqrt(std::max(lambda_max, 0.0)) * L / 2.0;
            const auto even = theta_tan_roots(Xi * L / 4.0, theta_max);
            if (even.negative_phi > 0.0) lv.push(-(2.0 * even.negative_phi / L) * (2.0 * even.negative_phi / L), 1);
            if (even.zero_mode) lv.push(0.0, 1);
            for (double th : even.theta) {
                const double v = (2.0 * th / L) * (2.0 * th / L);
                if (v <= lambda_max) lv.push(v, 1);
            }
            return sorted(std::move(lv));
        }
    }
    throw InvalidInput("unsupported problem");
}

}  // namespace

Problem problem_from_string(std::string_view name) {
    if (name == "interval") return Problem::Interval;
    if (name == "circle") return Problem::Circle;
    if (name == "rectangle") return Problem::Rectangle;
    if (name == "flat_torus") return Problem::FlatTorus;
    if (name == "disk") return Problem::Disk;
    if (name == "sphere") return Problem::Sphere;
    if (name == "hemisphere") return Problem::Hemisphere;
    if (name == "delta_circle") return Problem::DeltaCircle;
    if (name == "cylinder") return Problem::Cylinder;
    throw InvalidInput("unsupported problem id '" + std::string(name) + "'");
}

std::string_view to_string(Problem p) {
    switch (p) {
        case Problem::Interval: return "interval";
        case Problem::Circle: return "circle";
        case Problem::Rectangle: return "rectangle";
        case Problem::FlatTorus: return "flat_torus";
        case Problem::Disk: return "disk";
        case Problem::Sphere: return "sphere";
        case Problem::Hemisphere: return "hemisphere";
        case Problem::DeltaCircle: return "delta_circle";
        case Problem::Cylinder: return "cylinder";
    }
    return "?";
}

void SpectrumSpec::validate() const {
    std::size_t want = 1;
    switch (problem) {
        case Problem::Rectangle:
        case Problem::FlatTorus:
        case Problem::DeltaCircle:
        case Problem::Cylinder: want = 2; break;
        default: break;
    }
    const std::string name(to_string(problem));
    if (params.size() != want) {
        throw InvalidInput(name + " expects " + std::to_string(want) + " parameter(s), got " +
                           std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        const bool strength = problem == Problem::DeltaCircle && i == 1;
        if (!std::isfinite(params[i]) || (!strength && !(params[i] > 0.0))) {
            throw InvalidInput(name + ": invalid parameter " + std::to_string(params[i]));
        }
    }
    check_end(left, name.c_str());
    check_end(right, name.c_str());
    if (problem == Problem::Disk && left.kind != BoundaryKind::Dirichlet) {
        throw InvalidInput("disk: only Dirichlet conditions are supported by the Bessel-zero oracle");
    }
    if (problem == Problem::Hemisphere && left.kind == BoundaryKind::Robin && left.S != 0.0) {
        throw InvalidInput("hemisphere: only Dirichlet or Neumann (S = 0) conditions are supported");
    }
    if (!std::isfinite(V)) throw InvalidInput("potential must be finite");
    if (!(lambda_max >= 0.0) || !std::isfinite(lambda_max)) throw InvalidInput("cutoff must be finite");
}

std::uint64_t Spectrum::total() const {
    std::uint64_t n = 0;
    for (auto m : multiplicity) n += m;
    return n;
}

std::vector<double> Spectrum::expanded() const {
    std::vector<double> out;
    out.reserve(total());
    for (std::size_t i = 0; i < values.size(); ++i) out.insert(out.end(), multiplicity[i], values[i]);
    return out;
}

Spectrum eigenvalues(const SpectrumSpec& spec) {
    spec.validate();
    Spectrum out;
    if (spec.lambda_max > 0.0) {
        auto lv = raw_levels(spec, spec.lambda_max);
        out.values = std::move(lv.values);
        out.multiplicity = std::move(lv.mult);
        out.lambda_max = spec.lambda_max;
    } else if (spec.count > 0) {
        double lam = 16.0;
        Levels lv;
        for (int it = 0; it < 200; ++it) {
            lv = raw_levels(spec, lam);
            std::uint64_t n = 0;
            for (auto m : lv.mult) n += m;
            if (n >= spec.count) break;
            lam *= 2.0;
        }
        std::uint64_t left = spec.count;
        for (std::size_t i = 0; i < lv.values.size() && left > 0; ++i) {
            const std::uint64_t take = std::min<std::uint64_t>(left, lv.mult[i]);
            out.values.push_back(lv.values[i]);
            out.multiplicity.push_back(take);
            left -= take;
        }
        if (left > 0) throw NumericalFailure("could not enumerate the requested number of eigenvalues");
        out.lambda_max = out.values.empty() ? 0.0 : out.values.back();
    } else {
        throw InvalidInput("eigenvalues: a cutoff (lambda_max or count) is required");
    }
    if (spec.V != 0.0) {
        for (double& v : out.values) v += spec.V;
    }
    return out;
}

CountingBound counting_bound(const SpectrumSpec& spec) { return count_bound_impl(spec); }

double counting_upper_bound(const SpectrumSpec& spec, double lambda) {
    const auto b = count_bound_impl(spec);
    const double l = std::max(lambda, 0.0);
    return b.a * l + b.b * std::sqrt(l) + b.c;
}

double pruefer_angle(double L, double theta0, double lambda) {
    if (lambda > 0.0) {
        const double k = std::sqrt(lambda);
        const double phi = std::atan2(k * std::sin(theta0), std::cos(theta0)) + k * L;
        const double j = std::floor(phi / pi);
        const double rem = phi - j * pi;
        return j * pi + std::atan2(std::sin(rem), k * std::cos(rem));
    }
    const double kappa = std::sqrt(-lambda);
    const double x = kappa * L;
    // u and u' at L divided by cosh(kappa L)
    const double th = std::tanh(x);
    const double T = x < 1e-8 ? L : th / kappa;
    const double KT = x < 1e-8 ? kappa * kappa * L : kappa * th;
    const double u = std::sin(theta0) + std::cos(theta0) * T;
    const double up = std::sin(theta0) * KT + std::cos(theta0);
    double theta = std::atan2(u, up);
    if (theta < 0.0) theta += 2.0 * pi;
    return theta;
}

double interval_eigenvalue(double L, EndCondition left, EndCondition right, std::size_t j) {
    check_end(left, "interval");
    check_end(right, "interval");
    const double th0 = left_angle(left);
    const double target = right_angle(right) + static_cast<double>(j) * pi;
    auto f = [&](double lam) { return pruefer_angle(L, th0, lam) - target; };
    double hi = (target + pi) / L + 1.0;
    hi *= hi;
    double lo = 0.0;
    if (target > 2.0 * pi) {
        lo = (target - 2.0 * pi) / L;
        lo *= lo;
    }
    if (f(lo) > 0.0) {
        lo = -1.0;
        int guard = 0;
        while (f(lo) > 0.0) {
            lo *= 4.0;
            if (++guard > 200) throw NumericalFailure("interval: no lower bracket for the Pruefer equation");
        }
    }
    return bracket_root(f, lo, hi, "interval Pruefer equation");
}

std::vector<double> interval_eigenvalues(double L, EndCondition left, EndCondition right, double lambda_max) {
    std::vector<double> out;
    for (std::size_t j = 0;; ++j) {
        const double v = interval_eigenvalue(L, left, right, j);
        if (v > lambda_max) break;
        out.push_back(v);
    }
    return out;
}

double mcmahon_zero(double nu, int k) {
    const double beta = (k + nu / 2.0 - 0.25) * pi;
    const double mu = 4.0 * nu * nu;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

std::vector<std::vector<double>> bessel_zeros(double x_max, bool parallel) {
    if (!(x_max > 0.0)) return {};
    const int nu_max = static_cast<int>(std::floor(x_max));
    std::vector<std::vector<double>> zeros(static_cast<std::size_t>(nu_max) + 1);
    auto scan = [&](int nu) {
        auto J = [nu](double x) { return boost::math::cyl_bessel_j(nu, x); };
        std::vector<double> z;
        const double step = 0.5;
        double a = nu == 0 ? 0.25 : static_cast<double>(nu);
        double fa = J(a);
        while (a <= x_max) {
            const double b = a + step;
            const double fb = J(b);
            if (fa == 0.0) {
                z.push_back(a);
            } else if ((fa > 0.0) != (fb > 0.0) && fb != 0.0) {
                const double r = bracket_root(J, a, b, "Bessel zero");
                if (r <= x_max) z.push_back(r);
            }
            a = b;
            fa = fb;
        }
        while (!z.empty() && z.back() > x_max) z.pop_back();
        zeros[static_cast<std::size_t>(nu)] = std::move(z);
    };
    if (parallel) {
        std::vector<std::exception_ptr> errors(zeros.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (int nu = 0; nu <= nu_max; ++nu) {
            try {
                scan(nu);
            } catch (...) {
                errors[static_cast<std::size_t>(nu)] = std::current_exception();
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    } else {
        for (int nu = 0; nu <= nu_max; ++nu) scan(nu);
    }
    while (!zeros.empty() && zeros.back().empty()) zeros.pop_back();

    // interlacing j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}
    for (std::size_t nu = 0; nu + 1 < zeros.size(); ++nu) {
        const auto& a = zeros[nu];
        const auto& b = zeros[nu + 1];
        if (b.size() > a.size() || b.size() + 1 < a.size()) {
            throw NumericalFailure("Bessel zeros: counts for nu=" + std::to_string(nu) + " and nu+1 violate interlacing");
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!(a[k] < b[k]) || (k + 1 < a.size() && !(b[k] < a[k + 1]))) {
                throw NumericalFailure("Bessel zeros: interlacing violated at nu=" + std::to_string(nu) +
                                       ", k=" + std::to_string(k + 1));
            }
        }
    }
    // index check against the McMahon expansion where it is accurate
    for (std::size_t nu = 0; nu < zeros.size(); ++nu) {
        const auto& z = zeros[nu];
        const int k = static_cast<int>(z.size());
        if (k > 2 * static_cast<int>(nu) + 3) {
            if (std::abs(z.back() - mcmahon_zero(static_cast<double>(nu), k)) > 0.25) {
                throw NumericalFailure("Bessel zeros: index drift at nu=" + std::to_string(nu));
            }
        }
    }
    return zeros;
}

EvenBranchRoots theta_tan_roots(double c, double theta_max) {
    EvenBranchRoots out;
    auto g = [c](double th) { return th * std::sin(th) - c * std::cos(th); };
    if (c > 0.0) {
        const double r = bracket_root(g, 0.0, pi / 2.0, "theta tan(theta) = c");
        if (r <= theta_max) out.theta.push_back(r);
    } else if (c < 0.0) {
        auto h = [c](double ph) { return ph * std::tanh(ph) + c; };
        out.negative_phi = bracket_root(h, 0.0, -c + 1.0, "phi tanh(phi) = -c");
    } else {
        out.zero_mode = true;
    }
    for (int j = 1;; ++j) {
        const double lo = (j - 0.5) * pi, hi = (j + 0.5) * pi;
        if (lo > theta_max) break;
        const double r = c == 0.0 ? j * pi : bracket_root(g, lo, hi, "theta tan(theta) = c");
        if (r > theta_max) break;
        out.theta.push_back(r);
    }
    return out;
}

}  // namespace heatcoeff::oracle
