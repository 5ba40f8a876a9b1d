#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace heatcoeff {

// Exact fraction with 64-bit parts, always stored reduced with den > 0.
// Only used for the small rational constants of the coefficient tables, so
// overflow is treated as a programming error.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    constexpr Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    constexpr bool is_zero() const { return num_ == 0; }

    friend constexpr Rational operator+(Rational a, Rational b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        return {a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_};
    }
    friend constexpr Rational operator-(Rational a) { return {-a.num_, a.den_}; }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend constexpr Rational operator*(Rational a, Rational b) {
        const std::int64_t g1 = std::gcd(a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_, a.den_);
        const std::int64_t d1 = g1 == 0 ? 1 : g1;
        const std::int64_t d2 = g2 == 0 ? 1 : g2;
        return {(a.num_ / d1) * (b.num_ / d2), (a.den_ / d2) * (b.den_ / d1)};
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw std::domain_error("Rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    friend constexpr bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, Rational r) { return os << r.str(); }

private:
    constexpr void normalize() {
        if (den_ == 0) throw std::domain_error("Rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace heatcoeff
