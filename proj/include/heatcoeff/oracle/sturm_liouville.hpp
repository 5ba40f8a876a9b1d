#pragma once

#include <cstddef>
#include <functional>

#include "heatcoeff/oracle/spectrum.hpp"

namespace heatcoeff::oracle {

// -u'' + q(x) u = lambda u on [0, L] with Dirichlet or Robin ends.
struct SturmLiouvilleProblem {
    double L = 1.0;
    EndCondition left, right;
    std::function<double(double)> q;  // empty = 0
};

// j-th eigenvalue (0-based) of the second-order finite-difference
// discretization with N intervals. Robin ends use symmetrized ghost points;
// the index is located by Sturm-sequence bisection.
double fd_eigenvalue(const SturmLiouvilleProblem& p, std::size_t N, std::size_t j);

struct FdResult {
    double value = 0.0;           // Richardson extrapolated
    double error_estimate = 0.0;  // |last two extrapolants|
    double observed_order = 0.0;  // from the three finest raw values
};

// Runs N, 2N, ..., 2^(levels-1) N and extrapolates assuming an h^2 expansion.
FdResult fd_eigenvalue_extrapolated(const SturmLiouvilleProblem& p, std::size_t j, std::size_t N = 200,
                                    int levels = 4);

}  // namespace heatcoeff::oracle
