#pragma once

#include "polyflow/darboux.hpp"
#include "polyflow/report.hpp"
#include "polyflow/vector_field.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace polyflow {

struct Factor {
    Polynomial g;
    Rational exponent;
};

/// I = e^{-r t} Π g_a^{n_a}, a first integral whenever Σ n_a λ_a = r.
struct FirstIntegral {
    Rational rate;
    std::vector<Factor> factors;
    std::vector<DarbouxPair> provenance;

    /// Human-readable form, e.g. "exp(3*t)*(y)*(z)".
    [[nodiscard]] std::string to_string(const VarNames& names = kDefaultNames) const;
};

/// Raised when an integral is evaluated where a base vanishes and the
/// exponent is fractional or negative.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// All first integrals obtainable from the pairs: an exact basis of exponent
/// vectors n with Σ n_a (λ_a − λ_a(0)) = 0, each scaled to primitive integers
/// with first nonzero entry positive; r = Σ n_a λ_a(0). Pairs must be
/// certified (std::invalid_argument otherwise).
std::vector<FirstIntegral> combine_cofactors(const std::vector<DarbouxPair>& pairs);

/// Same, but also checks each pair against X first (mixed-field input is rejected).
std::vector<FirstIntegral> combine_cofactors(const VectorField& X, const std::vector<DarbouxPair>& pairs);

/// Recomputes every cofactor as X(g)/g by exact division and checks
/// Σ n λ − r = 0. Non-exact division is reported, not thrown.
Report certify_integral(const VectorField& X, const FirstIntegral& integral);

/// Numeric value at time t and state (x, y, z). Integer exponents use exact
/// signed powers; fractional ones use sign(g)|g|^n. Throws DomainError at a
/// zero base with a fractional or negative exponent.
double evaluate(const FirstIntegral& integral, double t, double x, double y, double z);

nlohmann::json to_json(const FirstIntegral& integral, const VarNames& names = kDefaultNames);

}  // namespace polyflow
