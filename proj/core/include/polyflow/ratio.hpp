#pragma once

#include "polyflow/polynomial.hpp"

#include <optional>
#include <string>

namespace polyflow {

/// Unreduced quotient of polynomials. Identities involving ratios are decided
/// by clearing denominators, so no gcd is ever taken.
struct Ratio {
    Polynomial num{0};
    Polynomial den{1};

    Ratio() = default;
    Ratio(Polynomial n) : num(std::move(n)) {}  // NOLINT: polynomials are ratios
    Ratio(Polynomial n, Polynomial d);
    Ratio(const Rational& c) : num(c) {}  // NOLINT
    Ratio(int c) : num(c) {}               // NOLINT

    [[nodiscard]] bool is_zero() const { return num.is_zero(); }
    /// The polynomial value when the denominator is a nonzero constant.
    [[nodiscard]] std::optional<Polynomial> as_polynomial() const;
    [[nodiscard]] Ratio pow(int k) const;
    [[nodiscard]] std::string to_string(const VarNames& names = kDefaultNames) const;

    friend Ratio operator+(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a, const Ratio& b);
    friend Ratio operator*(const Ratio& a, const Ratio& b);
    /// Throws std::domain_error when b is identically zero.
    friend Ratio operator/(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a) { return {-a.num, a.den}; }
};

/// Exact equality as rational functions: a.num * b.den == b.num * a.den.
bool equivalent(const Ratio& a, const Ratio& b);

}  // namespace polyflow
