#include "heatcoeff/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "heatcoeff/errors.hpp"

namespace heatcoeff {

namespace {

std::vector<int> resolve_orders(int n_max, std::span<const int> orders) {
    if (n_max < 0) throw InvalidInput("fit: n_max must be non-negative");
    std::vector<int> out;
    if (orders.empty()) {
        for (int n = 0; n <= n_max; ++n) out.push_back(n);
        return out;
    }
    out.assign(orders.begin(), orders.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int n : out) {
        if (n < 0 || n > n_max) throw InvalidInput("fit: order " + std::to_string(n) + " outside 0..n_max");
    }
    return out;
}

void check_samples(const TraceSamples& s, int n_max) {
    const std::size_t need = 2 * (static_cast<std::size_t>(n_max) + 1);
    if (s.size() < need) {
        throw InvalidInput("fit: " + std::to_string(s.size()) + " samples, at least " + std::to_string(need) +
                           " required for n_max=" + std::to_string(n_max));
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& x : s) {
        if (!(x.t > 0.0) || !std::isfinite(x.t) || !std::isfinite(x.value)) {
            throw InvalidInput("fit: samples need finite values at t > 0");
        }
        lo = std::min(lo, x.t);
        hi = std::max(hi, x.t);
    }
    if (hi > 10.0 * lo * (1.0 + 1e-9)) throw InvalidInput("fit: sample times must lie within one decade");
}

struct Solved {
    Eigen::VectorXd x;          // unscaled coefficients
    Eigen::VectorXd unc;        // per coefficient
    double residual = 0.0;
    double condition = 0.0;
};

// min |A c - y| with column scaling; `noise` is the 2-norm of the data error bound
Solved solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double noise) {
    const Eigen::Index p = A.cols();
    Eigen::VectorXd scale(p);
    Eigen::MatrixXd As = A;
    for (Eigen::Index j = 0; j < p; ++j) {
        scale(j) = A.col(j).norm();
        if (!(scale(j) > 0.0)) throw NumericalFailure("fit: zero column in the design matrix");
        As.col(j) /= scale(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    if (qr.rank() < p) throw NumericalFailure("fit: design matrix is rank deficient");
    Eigen::VectorXd xs = qr.solve(y);
    xs += qr.solve(y - As * xs);  // one step of iterative refinement
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Solved out;
    out.condition = sv(0) / sv(p - 1);
    out.residual = (As * xs - y).norm();
    // rows of the pseudo-inverse V diag(1/s) U^T; their norms give the sensitivity
    Eigen::MatrixXd Vs = svd.matrixV() * sv.cwiseInverse().asDiagonal();
    const double eps = std::numeric_limits<double>::epsilon();
    const double err = out.residual + noise + 8.0 * eps * y.norm();
    out.x = xs.cwiseQuotient(scale);
    out.unc.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) out.unc(j) = Vs.row(j).norm() * err / scale(j);
    return out;
}

// Adds |x - x'| to the uncertainty, where x' solves the model extended by
// `extra`. Catches truncation bias inside the column space, which the residual
// cannot see. Skipped when the extended model is rank deficient.
void add_truncation(Solved& sol, const Eigen::MatrixXd& A, const Eigen::VectorXd& extra, const Eigen::VectorXd& y,
                    double noise) {
    const Eigen::Index p = A.cols();
    if (A.rows() <= p + 1) return;
    Eigen::MatrixXd B(A.rows(), p + 1);
    B << A, extra;
    try {
        const auto ext = solve(B, y, noise);
        for (Eigen::Index j = 0; j < p; ++j) sol.unc(j) += std::abs(ext.x(j) - sol.x(j));
    } catch (const NumericalFailure&) {
    }
}

// Next order after the model: keeps the parity when only even orders are fitted.
int next_order(const std::vector<int>& ord) {
    const bool even = std::all_of(ord.begin(), ord.end(), [](int n) { return n % 2 == 0; });
    return ord.back() + (even ? 2 : 1);
}

}  // namespace

std::vector<double> geometric_grid(double t_min, double t_max, std::size_t count) {
    if (!(t_min > 0.0) || !(t_max > t_min) || count < 2) throw InvalidInput("geometric grid needs 0 < t_min < t_max, count >= 2");
    std::vector<double> ts(count);
    const double r = std::log(t_max / t_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) ts[i] = t_min * std::exp(r * static_cast<double>(i));
    ts.back() = t_max;
    return ts;
}

FitResult fit_half_powers(const TraceSamples& samples, int shift, int n_max, std::span<const int> orders) {
    const auto ord = resolve_orders(n_max, orders);
    check_samples(samples, n_max);
    const auto N = static_cast<Eigen::Index>(samples.size());
    const auto p = static_cast<Eigen::Index>(ord.size());
    Eigen::MatrixXd A(N, p);
    Eigen::VectorXd y(N), b(N);
    FitResult r;
    r.t_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < N; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        const double w = std::pow(s.t, 0.5 * shift);
        y(i) = s.value * w;
        b(i) = s.bound * w;
        for (Eigen::Index j = 0; j < p; ++j) A(i, j) = std::pow(s.t, 0.5 * ord[static_cast<std::size_t>(j)]);
        r.t_min = std::min(r.t_min, s.t);
        r.t_max = std::max(r.t_max, s.t);
    }
    auto sol = solve(A, y, b.norm());
    Eigen::VectorXd extra(N);
    for (Eigen::Index i = 0; i < N; ++i) extra(i) = std::pow(samples[static_cast<std::size_t>(i)].t, 0.5 * next_order(ord));
    add_truncation(sol, A, extra, y, b.norm());
    r.n_max = n_max;
    r.coefficients.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.uncertainty.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.fitted.assign(static_cast<std::size_t>(n_max) + 1, false);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto n = static_cast<std::size_t>(ord[static_cast<std::size_t>(j)]);
        r.coefficients[n] = sol.x(j);
        r.uncertainty[n] = sol.unc(j);
        r.fitted[n] = true;
    }
    r.residual_norm = sol.residual;
    r.condition_estimate = sol.condition;
    r.trusted = sol.condition <= kTrustedCondition;
    return r;
}

FitResult fit_trace(const TraceSamples& samples, int m, int n_max, std::span<const int> orders) {
    if (m < 1) throw InvalidInput("fit_trace: dimension must be positive");
    return fit_half_powers(samples, m, n_max, orders);
}

FitResult fit_content(const TraceSamples& samples, int n_max, std::span<const int> orders) {
    return fit_half_powers(samples, 0, n_max, orders);
}

FitResult sequential_extract(const TraceSamples& samples, int shift, int n_max, std::span<const int> orders) {
    const auto ord = resolve_orders(n_max, orders);
    check_samples(samples, n_max);
    const auto N = static_cast<Eigen::Index>(samples.size());
    FitResult r;
    r.n_max = n_max;
    r.coefficients.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.uncertainty.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.fitted.assign(static_cast<std::size_t>(n_max) + 1, false);
    r.t_min = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        r.t_min = std::min(r.t_min, s.t);
        r.t_max = std::max(r.t_max, s.t);
    }
    for (std::size_t k = 0; k < ord.size(); ++k) {
        const int n = ord[k];
        // g(t) = (T - known part) t^((shift - n)/2) = c_n + sum_{j>k} c_j t^((ord_j - n)/2)
        const auto p = static_cast<Eigen::Index>(ord.size() - k);
        const int next = next_order(ord);
        Eigen::MatrixXd A(N, p);
        Eigen::VectorXd y(N), b(N), extra(N);
        for (Eigen::Index i = 0; i < N; ++i) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            double known = 0.0;
            for (std::size_t q = 0; q < k; ++q) {
                known += r.coefficients[static_cast<std::size_t>(ord[q])] * std::pow(s.t, 0.5 * (ord[q] - shift));
            }
            const double w = std::pow(s.t, 0.5 * (shift - n));
            y(i) = (s.value - known) * w;
            b(i) = s.bound * w;
            for (Eigen::Index j = 0; j < p; ++j) A(i, j) = std::pow(s.t, 0.5 * (ord[k + static_cast<std::size_t>(j)] - n));
            extra(i) = std::pow(s.t, 0.5 * (next - n));
        }
        auto sol = solve(A, y, b.norm());
        add_truncation(sol, A, extra, y, b.norm());
        r.coefficients[static_cast<std::size_t>(n)] = sol.x(0);
        r.uncertainty[static_cast<std::size_t>(n)] = sol.unc(0);
        r.fitted[static_cast<std::size_t>(n)] = true;
        if (k == 0) {
            r.residual_norm = sol.residual;
            r.condition_estimate = sol.condition;
        }
    }
    r.trusted = r.condition_estimate <= kTrustedCondition;
    return r;
}

}  // namespace heatcoeff
