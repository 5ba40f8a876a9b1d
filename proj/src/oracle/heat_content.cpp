#include "heatcoeff/oracle/heat_content.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "heatcoeff/errors.hpp"

namespace heatcoeff::oracle {

namespace {

constexpr double pi = std::numbers::pi;

void check_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("heat content: t must be positive");
}

}  // namespace

TraceSample rod_dirichlet_content(double L, double t) {
    check_t(t);
    if (!(L > 0.0)) throw InvalidInput("rod length must be positive");
    double sum = 0.0, c = 0.0;
    std::size_t k = 0;
    double next = 0.0;
    for (;; ++k) {
        const double w = (2.0 * static_cast<double>(k) + 1.0) * pi / L;
        const double term = 8.0 * L / (pi * pi * (2.0 * k + 1.0) * (2.0 * k + 1.0)) * std::exp(-w * w * t);
        // Kahan
        const double y = term - c;
        const double s = sum + y;
        c = (s - sum) - y;
        sum = s;
        const double wn = (2.0 * static_cast<double>(k) + 3.0) * pi / L;
        next = std::exp(-wn * wn * t);
        if (next < 1e-18) break;
    }
    // sum_{odd j >= 2k+3} 1/j^2 <= 1/(2(2k+1))
    const double bound = next * 8.0 * L / (pi * pi) / (2.0 * (2.0 * static_cast<double>(k) + 1.0));
    return {t, sum, bound};
}

TraceSample rod_robin_content(double L, double S, double t) {
    check_t(t);
    if (!(L > 0.0) || !std::isfinite(S)) throw InvalidInput("rod: invalid length or S");
    const double theta_max = 0.5 * L * std::sqrt(80.0 / t) + pi;
    const auto roots = theta_tan_roots(-S * L / 2.0, theta_max);
    std::vector<double> terms;
    if (roots.negative_phi > 0.0) {
        const double ph = roots.negative_phi, kap = 2.0 * ph / L;
        const double integral = 2.0 * std::sinh(ph) / kap;
        const double norm = L / 2.0 + std::sinh(2.0 * ph) / (2.0 * kap);
        terms.push_back(std::exp(kap * kap * t) * integral * integral / norm);
    }
    if (roots.zero_mode) terms.push_back(L);
    double k_last = 0.0;
    for (double th : roots.theta) {
        const double k = 2.0 * th / L;
        const double integral = 2.0 * std::sin(th) / k;
        const double norm = L / 2.0 + std::sin(2.0 * th) / (2.0 * k);
        terms.push_back(std::exp(-k * k * t) * integral * integral / norm);
        k_last = k;
    }
    // sum from the smallest terms up
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    // remaining modes: weight <= 16/(k^2 L), spacing >= 2 pi / L
    double bound = 0.0;
    if (k_last > 0.0) {
        bound = 16.0 / (k_last * k_last * L) * (L / (2.0 * pi)) * 0.5 * std::sqrt(pi / t) *
                std::erfc(k_last * std::sqrt(t));
    }
    return {t, sum, bound};
}

TraceSample hemisphere_dirichlet_content(double R, double t) {
    check_t(t);
    if (!(R > 0.0)) throw InvalidInput("hemisphere radius must be positive");
    // P_n(0) for even n by P_{n+2}(0) = -(n+1)/(n+2) P_n(0)
    std::vector<double> terms;
    double p_prev = 1.0;  // P_{l-1}(0), l = 1
    double last_arg = 0.0;
    for (int l = 1;; l += 2) {
        const double p_next = -static_cast<double>(l) / (l + 1.0) * p_prev;  // P_{l+1}(0)
        const double a = p_prev - p_next;
        const double arg = l * (l + 1.0) * t / (R * R);
        terms.push_back(2.0 * pi * R * R * a * a / (2.0 * l + 1.0) * std::exp(-arg));
        p_prev = p_next;
        last_arg = arg;
        if (arg > 80.0) break;
    }
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    // a_l^2/(2l+1) <= 1 and the remaining exponents grow at least linearly
    const double bound = 2.0 * pi * R * R * std::exp(-last_arg) / (1.0 - std::exp(-4.0 * t / (R * R)));
    return {t, sum, bound};
}

TraceSample circle_content(const CircleContent& c, double t) {
    check_t(t);
    if (!(c.L > 0.0)) throw InvalidInput("circle length must be positive");
    // frequency index -> (cos, sin) coefficients
    auto modes = [&](const Profile& p, const char* name) {
        std::map<long, std::pair<double, double>> m;
        for (std::size_t i = 0; i < p.poly().size(); ++i) {
            if (i > 0 && p.poly()[i] != 0.0) {
                throw InvalidInput(std::string("circle content: ") + name + " must be constant plus periodic trig terms");
            }
        }
        if (!p.poly().empty()) m[0].first += p.poly()[0];
        for (const auto& tr : p.trig()) {
            const double kk = tr.omega * c.L / (2.0 * pi);
            const long k = std::lround(kk);
            if (std::abs(kk - static_cast<double>(k)) > 1e-9) {
                throw InvalidInput(std::string("circle content: ") + name + " frequency is not periodic on the circle");
            }
            const long ak = std::labs(k);
            m[ak].first += tr.a_cos;
            m[ak].second += (k < 0 ? -1.0 : 1.0) * tr.b_sin;
        }
        return m;
    };
    const auto mp = modes(c.phi, "phi");
    const auto mr = modes(c.rho, "rho");
    double sum = 0.0;
    for (const auto& [k, ab] : mp) {
        auto it = mr.find(k);
        if (it == mr.end()) continue;
        const double w = 2.0 * pi * static_cast<double>(k) / c.L;
        const double pairing =
            k == 0 ? c.L * ab.first * it->second.first : 0.5 * c.L * (ab.first * it->second.first + ab.second * it->second.second);
        sum += pairing * std::exp((c.E - w * w) * t);
    }
    return {t, sum, 0.0};
}

double rod_content_cn_raw(const RodProblem& rod, double t, std::size_t N, std::size_t K) {
    rod.validate();
    check_t(t);
    if (N < 4 || K < 3) throw InvalidInput("Crank-Nicolson needs N >= 4 and at least 3 time steps");
    const double L = rod.L;
    const double h = L / static_cast<double>(N);
    const std::size_t n = N + 1;
    std::vector<double> x(n), u(n), E(n), p0(n), p1(n), rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = h * static_cast<double>(i);
        u[i] = rod.phi(x[i]);
        E[i] = rod.E(x[i]);
        p0[i] = rod.p0(x[i]);
        p1[i] = rod.p1(x[i]);
        rho[i] = rod.rho(x[i]);
    }
    const bool dl = rod.left.kind == BoundaryKind::Dirichlet;
    const bool dr = rod.right.kind == BoundaryKind::Dirichlet;
    auto psiL = [&](double tau) { return rod.left.psi0 + tau * rod.left.psi1; };
    auto psiR = [&](double tau) { return rod.right.psi0 + tau * rod.right.psi1; };
    if (dl) u[0] = psiL(0.0);
    if (dr) u[N] = psiR(0.0);

    std::vector<double> lo(n), di(n), up(n), g(n);
    auto assemble = [&](double tau) {
        const double a = 1.0 - rod.G1 * tau;
        const double b = -rod.F1 * tau;
        const double ih2 = 1.0 / (h * h);
        for (std::size_t i = 0; i < n; ++i) {
            const double c = E[i] - rod.E1 * tau;
            lo[i] = a * ih2 - b / (2.0 * h);
            di[i] = -2.0 * a * ih2 + c;
            up[i] = a * ih2 + b / (2.0 * h);
            g[i] = p0[i] + tau * p1[i];
        }
        lo[0] = 0.0;
        up[N] = 0.0;
        if (!dl) {
            const double S = rod.left.S;
            di[0] = a * (-2.0 + 2.0 * h * S) * ih2 - b * S + (E[0] - rod.E1 * tau);
            up[0] = 2.0 * a * ih2;
            g[0] += (-2.0 * a / h + b) * psiL(tau);
        }
        if (!dr) {
            const double S = rod.right.S;
            di[N] = a * (-2.0 + 2.0 * h * S) * ih2 + b * S + (E[N] - rod.E1 * tau);
            lo[N] = 2.0 * a * ih2;
            g[N] += (-2.0 * a / h - b) * psiR(tau);
        }
    };

    std::vector<double> rhs(n), cp(n), dp(n);
    auto step = [&](double t0, double t1, double theta) {
        const double dt = t1 - t0;
        assemble(t0);
        for (std::size_t i = 0; i < n; ++i) {
            double Au = di[i] * u[i];
            if (i > 0) Au += lo[i] * u[i - 1];
            if (i + 1 < n) Au += up[i] * u[i + 1];
            rhs[i] = u[i] + (1.0 - theta) * dt * (Au + g[i]);
        }
        assemble(t1);
        // M = I - theta dt A(t1)
        std::vector<double>& a = lo;
        for (std::size_t i = 0; i < n; ++i) {
            rhs[i] += theta * dt * g[i];
            a[i] = -theta * dt * lo[i];
            di[i] = 1.0 - theta * dt * di[i];
            up[i] = -theta * dt * up[i];
        }
        if (dl) {
            di[0] = 1.0;
            up[0] = 0.0;
            rhs[0] = psiL(t1);
        }
        if (dr) {
            di[N] = 1.0;
            a[N] = 0.0;
            rhs[N] = psiR(t1);
        }
        // Thomas algorithm
        cp[0] = up[0] / di[0];
        dp[0] = rhs[0] / di[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = di[i] - a[i] * cp[i - 1];
            cp[i] = up[i] / m;
            dp[i] = (rhs[i] - a[i] * dp[i - 1]) / m;
        }
        u[N] = dp[N];
        for (std::size_t i = N; i-- > 0;) u[i] = dp[i] - cp[i] * u[i + 1];
    };

    const double dt = t / static_cast<double>(K);
    double tau = 0.0;
    for (int s = 0; s < 4; ++s) {  // two steps' worth of backward Euler half steps
        const double t1 = dt * 0.5 * (s + 1);
        step(tau, t1, 1.0);
        tau = t1;
    }
    for (std::size_t s = 2; s < K; ++s) {
        const double t1 = s + 1 == K ? t : dt * static_cast<double>(s + 1);
        step(tau, t1, 0.5);
        tau = t1;
    }
    double sum = 0.5 * (u[0] * rho[0] + u[N] * rho[N]);
    for (std::size_t i = 1; i < N; ++i) sum += u[i] * rho[i];
    return h * sum;
}

CnResult rod_content_cn(const RodProblem& rod, double t, const CnOptions& opt) {
    const std::size_t N = opt.N;
    const std::size_t K = opt.steps ? opt.steps : std::max<std::size_t>(N / 5, 8);
    const double v00 = rod_content_cn_raw(rod, t, N, K);
    const double v11 = rod_content_cn_raw(rod, t, 2 * N, 2 * K);
    const double v22 = rod_content_cn_raw(rod, t, 4 * N, 4 * K);
    const double v10 = rod_content_cn_raw(rod, t, 2 * N, K);
    const double v20 = rod_content_cn_raw(rod, t, 4 * N, K);
    const double v01 = rod_content_cn_raw(rod, t, N, 2 * K);
    const double v02 = rod_content_cn_raw(rod, t, N, 4 * K);

    const double floor = 1e-12 * std::max(1.0, std::abs(v00));
    auto order = [floor](double a, double b, double c) {
        const double d1 = std::abs(a - b), d2 = std::abs(b - c);
        if (d1 <= floor && d2 <= floor) return std::numeric_limits<double>::infinity();
        if (d2 == 0.0) return std::numeric_limits<double>::infinity();
        return std::log2(d1 / d2);
    };
    CnResult r;
    r.order_dx = order(v00, v10, v20);
    r.order_dt = order(v00, v01, v02);
    const double R1 = (4.0 * v11 - v00) / 3.0;
    const double R2 = (4.0 * v22 - v11) / 3.0;
    r.value = R2 + (R2 - R1) / 15.0;
    r.error_estimate = std::abs(R2 - R1);
    if (r.order_dx < opt.min_order || r.order_dt < opt.min_order) {
        throw NumericalFailure("Crank-Nicolson refinement did not converge at t=" + std::to_string(t) +
                               ": observed order dx=" + std::to_string(r.order_dx) + ", dt=" +
                               std::to_string(r.order_dt) + " (required " + std::to_string(opt.min_order) +
                               "); raw values " + std::to_string(v00) + ", " + std::to_string(v11) + ", " +
                               std::to_string(v22));
    }
    return r;
}

TraceSamples rod_content_samples(const RodProblem& rod, std::span<const double> ts, const CnOptions& opt,
                                 bool parallel) {
    TraceSamples out(ts.size());
    std::vector<std::exception_ptr> errors(ts.size());
    auto one = [&](std::size_t i) {
        try {
            const auto r = rod_content_cn(rod, ts[i], opt);
            out[i] = {ts[i], r.value, r.error_estimate};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ts.size()); ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < ts.size(); ++i) one(i);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace heatcoeff::oracle
