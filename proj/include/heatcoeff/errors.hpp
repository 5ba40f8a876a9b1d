#pragma once

#include <stdexcept>
#include <string>

namespace heatcoeff {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad parameters, Clifford violations, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Requested coefficient order has no printed formula in this engine.
class UnsupportedOrder : public Error {
public:
    UnsupportedOrder(const std::string& what, int order)
        : Error(what), order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

// The D/N (Zaremba) problem has no expansion with locally computable
// coefficients from a_3 on. Raised on purpose; it is not a defect.
class NotLocallyComputable : public Error {
public:
    explicit NotLocallyComputable(int order)
        : Error("a_" + std::to_string(order) +
                " for the D/N junction problem: the asymptotic expansion does not exist "
                "with locally computable coefficients at the a_3 level"),
          order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

// Root bracketing, convergence certificates, truncation bounds.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

}  // namespace heatcoeff
