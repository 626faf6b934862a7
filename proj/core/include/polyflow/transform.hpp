#pragma once

#include "polyflow/integral.hpp"
#include "polyflow/vector_field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace polyflow {

/// State rescaling u_i = x_i e^{a_i t} combined with a new time tau,
/// dtau = e^{-ct} dt (c = 0 keeps the original time).
struct ExpScaling {
    std::array<int, 3> a{0, 0, 0};
    int clock = 0;

    friend bool operator==(const ExpScaling&, const ExpScaling&) = default;
};

/// The field in the new variables:
///   du_i/dtau = s^c (a_i u_i s^{c0} + s^{a_i} X_i(u s^{-a})),
/// where c0 is the clock rate X already carries. The result has clock rate c0 + c.
VectorField transform(const VectorField& X, const ExpScaling& sc, const VarNames& names = kDefaultNames,
                      std::string name = "");

/// Undoes `transform` exactly (clock first, then the state rescaling).
VectorField inverse_transform(const VectorField& Y, const ExpScaling& sc, const VarNames& names = kDefaultNames,
                              std::string name = "");

/// p(x) rewritten in the new variables: x_i -> u_i s^{-a_i}.
Polynomial pullback(const Polynomial& p, const ExpScaling& sc);

/// e^{-rt} Π g^n in the new variables, as a polynomial in u and s. Only
/// defined for integer rate and non-negative integer exponents.
std::optional<Polynomial> pullback(const FirstIntegral& integral, const ExpScaling& sc);

struct AutonomyReport {
    bool autonomous = true;
    /// Distinct nonzero s-exponents across all components, ascending.
    std::vector<int> surviving_powers;
    std::array<std::vector<int>, 3> per_component;
};

AutonomyReport autonomy_report(const PolyVector& X);

}  // namespace polyflow
