#include "heatcoeff/oracle/heat_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatcoeff/errors.hpp"

namespace heatcoeff::oracle {

namespace {

constexpr double pi = std::numbers::pi;

struct Neumaier {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    double value() const { return s + c; }
};

bool dn_end(EndCondition e) { return e.kind == BoundaryKind::Dirichlet || (e.kind == BoundaryKind::Robin && e.S == 0.0); }

TraceSample product(TraceSample a, TraceSample b) {
    return {a.t, a.value * b.value, a.bound * std::abs(b.value) + b.bound * std::abs(a.value) + a.bound * b.bound};
}

SpectrumSpec interval_spec(double L, EndCondition a, EndCondition b, double lambda_max) {
    SpectrumSpec s;
    s.problem = Problem::Interval;
    s.params = {L};
    s.left = a;
    s.right = b;
    s.lambda_max = lambda_max;
    return s;
}

SpectrumSpec circle_spec(double L) {
    SpectrumSpec s;
    s.problem = Problem::Circle;
    s.params = {L};
    return s;
}

// Closed forms; returns false when the problem has none.
bool theta_trace(const SpectrumSpec& s, double t, TraceSample& out) {
    out.t = t;
    switch (s.problem) {
        case Problem::Circle: {
            const double L = s.params[0];
            out.value = theta_sum(4.0 * pi * pi * t / (L * L), 0.0, &out.bound);
            return true;
        }
        case Problem::Interval: {
            if (!dn_end(s.left) || !dn_end(s.right)) return false;
            const double L = s.params[0];
            const double a = pi * pi * t / (L * L);
            const bool dl = s.left.kind == BoundaryKind::Dirichlet;
            const bool dr = s.right.kind == BoundaryKind::Dirichlet;
            double b = 0.0;
            if (dl != dr) {
                out.value = 0.5 * theta_sum(a, 0.5, &b);
            } else {
                const double th = theta_sum(a, 0.0, &b);
                out.value = dl ? 0.5 * (th - 1.0) : 0.5 * (th + 1.0);
            }
            out.bound = 0.5 * b;
            return true;
        }
        default: return false;
    }
}

void check_time(const SpectrumSpec& s, double t) {
    const auto& td = s.time;
    if (s.problem != Problem::Circle && s.problem != Problem::Interval) {
        throw InvalidInput("time-dependent traces are available for circle and interval only");
    }
    if (s.V != 0.0) throw InvalidInput("time-dependent traces do not combine with a static potential");
    // min of 1 + gamma tau + gamma2 tau^2 on [0, t]
    double lo = std::min(1.0, 1.0 + td.gamma * t + td.gamma2 * t * t);
    if (td.gamma2 > 0.0) {
        const double v = -td.gamma / (2.0 * td.gamma2);
        if (v > 0.0 && v < t) lo = std::min(lo, 1.0 + td.gamma * v + td.gamma2 * v * v);
    }
    if (!(lo > 0.0)) {
        throw InvalidInput("1 + gamma t + gamma2 t^2 <= 0 on [0, " + std::to_string(t) +
                           "]: the operator is not of Laplace type there");
    }
}

TraceSamples static_samples(const SpectrumSpec& spec, std::span<const double> ts, double tol);

TraceSamples factor_product(const SpectrumSpec& a, const SpectrumSpec& b, std::span<const double> ts, double tol) {
    auto x = static_samples(a, ts, tol);
    auto y = static_samples(b, ts, tol);
    TraceSamples out;
    for (std::size_t i = 0; i < ts.size(); ++i) out.push_back(product(x[i], y[i]));
    return out;
}

TraceSamples static_samples(const SpectrumSpec& spec, std::span<const double> ts, double tol) {
    TraceSamples out;
    const auto& p = spec.params;
    switch (spec.problem) {
        case Problem::FlatTorus: return factor_product(circle_spec(p[0]), circle_spec(p[1]), ts, tol);
        case Problem::Rectangle:
            return factor_product(interval_spec(p[0], spec.left, spec.left, spec.lambda_max),
                                  interval_spec(p[1], spec.left, spec.left, spec.lambda_max), ts, tol);
        case Problem::Cylinder:
            return factor_product(circle_spec(2.0 * pi * p[0]), interval_spec(p[1], spec.left, spec.right, spec.lambda_max),
                                  ts, tol);
        default: break;
    }
    TraceSample s;
    if (!ts.empty() && theta_trace(spec, ts[0], s)) {
        for (double t : ts) {
            theta_trace(spec, t, s);
            out.push_back(s);
        }
        return out;
    }
    if (ts.empty()) return out;
    const double t_min = *std::min_element(ts.begin(), ts.end());
    double Lambda = spec.lambda_max;
    if (Lambda > 0.0) {
        const double tb = tail_bound(spec, Lambda, t_min);
        if (tb > tol) {
            throw NumericalFailure("heat trace: tail bound " + std::to_string(tb) + " exceeds tolerance " +
                                   std::to_string(tol) + " at t=" + std::to_string(t_min) + " with Lambda=" +
                                   std::to_string(Lambda) + "; required Lambda ~ " +
                                   std::to_string(required_lambda(spec, t_min, tol)));
        }
    } else {
        Lambda = required_lambda(spec, t_min, tol);
    }
    SpectrumSpec raw = spec;
    raw.V = 0.0;
    raw.count = 0;
    raw.lambda_max = Lambda;
    const auto sp = eigenvalues(raw);
    for (double t : ts) {
        out.push_back({t, spectral_sum_parallel(sp.values, sp.multiplicity, t), tail_bound(spec, Lambda, t)});
    }
    return out;
}

}  // namespace

double theta_sum(double a, double shift, double* bound) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidInput("theta_sum: a must be positive");
    constexpr double rel = 1e-18;
    if (a >= pi) {
        Neumaier acc;
        double next = 0.0;
        for (int n = 0;; ++n) {
            const double x1 = n + shift, x2 = n + 1 - shift;
            const double t1 = std::exp(-a * x1 * x1), t2 = std::exp(-a * x2 * x2);
            acc.add(t1);
            acc.add(t2);
            const double x = n + 1 + std::min(shift, 1.0 - shift);
            next = std::exp(-a * x * x);
            if (next < rel * acc.value() || next == 0.0) break;
        }
        // remaining terms on both sides decay at least geometrically with ratio exp(-a)
        if (bound) *bound = 2.0 * next / (1.0 - std::exp(-a));
        return acc.value();
    }
    const double pref = std::sqrt(pi / a);
    const double b = pi * pi / a;
    Neumaier acc;
    acc.add(1.0);
    double next = 0.0;
    for (int k = 1;; ++k) {
        const double e = std::exp(-b * k * k);
        acc.add(2.0 * e * std::cos(2.0 * pi * k * shift));
        next = std::exp(-b * (k + 1.0) * (k + 1.0));
        if (next < rel || next == 0.0) break;
    }
    if (bound) *bound = pref * 2.0 * next / (1.0 - std::exp(-b));
    return pref * acc.value();
}

double tail_bound(const SpectrumSpec& spec, double Lambda, double t) {
    const auto c = counting_bound(spec);
    const double x = t * Lambda;
    const double e = std::exp(-x);
    // t int_Lambda^inf exp(-t l) N+(l) dl
    const double lin = c.a * e * (Lambda + 1.0 / t);
    const double gamma32 = std::sqrt(x) * e + 0.5 * std::sqrt(pi) * std::erfc(std::sqrt(x));
    const double root = c.b * gamma32 / std::sqrt(t);
    return lin + root + c.c * e;
}

double required_lambda(const SpectrumSpec& spec, double t, double tol) {
    double L = 1.0 / t;
    for (int i = 0; i < 80; ++i, L *= 2.0) {
        if (tail_bound(spec, L, t) <= tol) return L;
    }
    throw NumericalFailure("no cutoff meets tolerance " + std::to_string(tol));
}

double rescaled_time(const TimeDependence& td, double t) {
    return t + td.gamma * t * t / 2.0 + td.gamma2 * t * t * t / 3.0;
}

TraceSample heat_trace(const SpectrumSpec& spec, double t, double tol) {
    const double ts[] = {t};
    return heat_trace_samples(spec, ts, tol).front();
}

TraceSample time_dependent_trace(const SpectrumSpec& spec, double t, double tol) {
    return heat_trace(spec, t, tol);
}

TraceSamples heat_trace_samples(const SpectrumSpec& spec, std::span<const double> ts, double tol) {
    spec.validate();
    for (double t : ts) {
        if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("heat trace: t must be positive");
    }
    if (!spec.time.is_static()) {
        std::vector<double> ss;
        for (double t : ts) {
            check_time(spec, t);
            ss.push_back(rescaled_time(spec.time, t));
        }
        SpectrumSpec st = spec;
        st.time = {};
        auto out = static_samples(st, ss, tol);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double f = std::exp(-spec.time.epsilon * ts[i] * ts[i] / 2.0);
            out[i] = {ts[i], f * out[i].value, f * out[i].bound};
        }
        return out;
    }
    auto out = static_samples(spec, ts, tol);
    if (spec.V != 0.0) {
        for (auto& s : out) {
            const double f = std::exp(-spec.V * s.t);
            s.value *= f;
            s.bound *= f;
        }
    }
    return out;
}

double spectral_sum_serial(std::span<const double> values, std::span<const std::uint64_t> mult, double t) {
    Neumaier acc;
    for (std::size_t i = 0; i < values.size(); ++i) acc.add(static_cast<double>(mult[i]) * std::exp(-t * values[i]));
    return acc.value();
}

double spectral_sum_parallel(std::span<const double> values, std::span<const std::uint64_t> mult, double t) {
    const std::size_t n = values.size();
    const std::size_t chunks = (n + kSumChunk - 1) / kSumChunk;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kSumChunk;
        const std::size_t hi = std::min(n, lo + kSumChunk);
        Neumaier acc;
        for (std::size_t i = lo; i < hi; ++i) acc.add(static_cast<double>(mult[i]) * std::exp(-t * values[i]));
        partial[static_cast<std::size_t>(c)] = acc.value();
    }
    Neumaier total;
    for (double p : partial) total.add(p);
    return total.value();
}

}  // namespace heatcoeff::oracle
