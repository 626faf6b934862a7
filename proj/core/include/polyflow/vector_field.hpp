#pragma once

#include "polyflow/polynomial.hpp"

#include <array>
#include <map>
#include <string>

namespace polyflow {

/// Three polynomial entries: Poisson vectors, gradients, cross products.
struct PolyVector {
    std::array<Polynomial, 3> c;

    PolyVector() = default;
    PolyVector(Polynomial a, Polynomial b, Polynomial d) : c{std::move(a), std::move(b), std::move(d)} {}

    Polynomial& operator[](std::size_t i) { return c[i]; }
    const Polynomial& operator[](std::size_t i) const { return c[i]; }

    [[nodiscard]] bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
    [[nodiscard]] bool is_s_free() const { return c[0].is_s_free() && c[1].is_s_free() && c[2].is_s_free(); }

    friend PolyVector operator+(const PolyVector& a, const PolyVector& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    friend PolyVector operator-(const PolyVector& a, const PolyVector& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    }
    friend PolyVector operator-(const PolyVector& a) { return {-a[0], -a[1], -a[2]}; }
    friend PolyVector operator*(const Polynomial& f, const PolyVector& a) { return {f * a[0], f * a[1], f * a[2]}; }
    friend bool operator==(const PolyVector&, const PolyVector&) = default;

    [[nodiscard]] std::string to_string(const VarNames& names = kDefaultNames) const;
};

/// Polynomial vector field x' = P, y' = Q, z' = R with parameters already
/// substituted. `clock_rate` c records a time reparametrization
/// dtau = e^{-ct} dt, under which the clock evolves as ds/dtau = s^{1+c}.
class VectorField {
public:
    VectorField(PolyVector components, std::string name = "field", std::map<std::string, Rational> params = {},
                int clock_rate = 0, VarNames names = kDefaultNames);

    [[nodiscard]] const PolyVector& components() const { return f_; }
    [[nodiscard]] const Polynomial& operator[](std::size_t i) const { return f_[i]; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::map<std::string, Rational>& params() const { return params_; }
    [[nodiscard]] int clock_rate() const { return clock_rate_; }
    [[nodiscard]] const VarNames& names() const { return names_; }
    /// max(deg P, deg Q, deg R).
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_autonomous() const { return f_.is_s_free(); }

    operator const PolyVector&() const { return f_; }  // NOLINT: fields are flows

private:
    PolyVector f_;
    std::string name_;
    std::map<std::string, Rational> params_;
    int clock_rate_;
    VarNames names_;
};

/// X(g) = P g_x + Q g_y + R g_z + s^{1+c} g_s; the clock term makes this the
/// total time derivative for time-dependent g.
Polynomial apply_derivation(const VectorField& X, const Polynomial& g);

/// Spatial gradient; never differentiates s.
PolyVector gradient(const Polynomial& h);
PolyVector curl(const PolyVector& j);
Polynomial divergence(const PolyVector& f);
PolyVector cross(const PolyVector& a, const PolyVector& b);
Polynomial dot(const PolyVector& a, const PolyVector& b);

}  // namespace polyflow
