#include "heatcoeff/oracle/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "heatcoeff/errors.hpp"

namespace heatcoeff::oracle {

namespace {

struct Tridiagonal {
    std::vector<double> d;  // diagonal
    std::vector<double> e;  // off-diagonal, e[i] couples i and i+1
};

Tridiagonal assemble(const SturmLiouvilleProblem& p, std::size_t N) {
    if (N < 4) throw InvalidInput("FD solver needs at least 4 intervals");
    const double h = p.L / static_cast<double>(N);
    const double ih2 = 1.0 / (h * h);
    auto q = [&](std::size_t i) { return p.q ? p.q(h * static_cast<double>(i)) : 0.0; };
    const bool dl = p.left.kind == BoundaryKind::Dirichlet;
    const bool dr = p.right.kind == BoundaryKind::Dirichlet;
    const std::size_t first = dl ? 1 : 0;
    const std::size_t last = dr ? N - 1 : N;
    Tridiagonal t;
    for (std::size_t i = first; i <= last; ++i) {
        t.d.push_back(2.0 * ih2 + q(i));
        if (i < last) t.e.push_back(-ih2);
    }
    // Robin rows after the ghost elimination and the diag(1/2, 1, ..., 1, 1/2)
    // symmetrization: diagonal 2(1 - h S)/h^2 + q, coupling -sqrt(2)/h^2.
    if (!dl) {
        t.d.front() = 2.0 * (1.0 - h * p.left.S) * ih2 + q(0);
        t.e.front() = -std::sqrt(2.0) * ih2;
    }
    if (!dr) {
        t.d.back() = 2.0 * (1.0 - h * p.right.S) * ih2 + q(N);
        t.e.back() = -std::sqrt(2.0) * ih2;
    }
    return t;
}

// number of eigenvalues < x
std::size_t sturm_count(const Tridiagonal& t, double x) {
    std::size_t count = 0;
    double piv = t.d[0] - x;
    if (piv < 0.0) ++count;
    for (std::size_t i = 1; i < t.d.size(); ++i) {
        if (piv == 0.0) piv = 1e-300;
        piv = t.d[i] - x - t.e[i - 1] * t.e[i - 1] / piv;
        if (piv < 0.0) ++count;
    }
    return count;
}

}  // namespace

double fd_eigenvalue(const SturmLiouvilleProblem& p, std::size_t N, std::size_t j) {
    const auto t = assemble(p, N);
    if (j >= t.d.size()) throw InvalidInput("FD eigenvalue index beyond the grid size");
    // Gershgorin bounds
    double lo = t.d[0], hi = t.d[0];
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.e[i - 1]);
        if (i < t.e.size()) r += std::abs(t.e[i]);
        lo = std::min(lo, t.d[i] - r);
        hi = std::max(hi, t.d[i] + r);
    }
    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)) + 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(t, mid) > j) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

FdResult fd_eigenvalue_extrapolated(const SturmLiouvilleProblem& p, std::size_t j, std::size_t N, int levels) {
    if (levels < 3) throw InvalidInput("Richardson extrapolation needs at least 3 levels");
    std::vector<double> raw;
    for (int l = 0; l < levels; ++l) raw.push_back(fd_eigenvalue(p, N << l, j));
    // Richardson table for errors c2 h^2 + c4 h^4 + ...
    std::vector<std::vector<double>> T{raw};
    for (int k = 1; k < levels; ++k) {
        const double f = std::pow(4.0, k);
        std::vector<double> row;
        for (std::size_t i = 1; i < T.back().size(); ++i) row.push_back((f * T.back()[i] - T.back()[i - 1]) / (f - 1.0));
        T.push_back(row);
    }
    FdResult r;
    r.value = T.back().back();
    r.error_estimate = std::abs(T[static_cast<std::size_t>(levels) - 1].back() - T[static_cast<std::size_t>(levels) - 2].back());
    const std::size_t n = raw.size();
    const double d1 = raw[n - 3] - raw[n - 2], d2 = raw[n - 2] - raw[n - 1];
    r.observed_order = (d2 == 0.0) ? 99.0 : std::log2(std::abs(d1 / d2));
    return r;
}

}  // namespace heatcoeff::oracle
