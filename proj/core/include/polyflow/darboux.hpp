#pragma once

#include "polyflow/report.hpp"
#include "polyflow/vector_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyflow {

/// (g, λ) with X(g) = λ g. `certified` is set only by exact verification.
struct DarbouxPair {
    Polynomial g;
    Polynomial cofactor;
    bool certified = false;
    std::string note;
};

enum class SearchMethod { ExactConstant, Numeric };

struct SearchConfig {
    int degree = 2;
    SearchMethod method = SearchMethod::Numeric;
    int starts = 200;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    long denom_bound = 64;
    int max_iterations = 200;
    /// 0 = hardware concurrency. Results never depend on this.
    unsigned threads = 0;

    /// Throws std::invalid_argument when a bound is not positive.
    void validate() const;
};

/// Coefficient equations of X(g) − λ g = 0 for generic g of degree ≤ d and
/// λ of degree ≤ m − 1. Each equation is bilinear in (g, λ).
struct BilinearSystem {
    struct LinearTerm {
        std::size_t equation, g;
        Rational coeff;
    };
    struct BilinearTerm {
        std::size_t equation, g, cofactor;
        Rational coeff;
    };

    std::vector<Monomial> g_basis;         ///< degree d down to the constant
    std::vector<Monomial> cofactor_basis;  ///< degree m−1 down to the constant
    std::vector<Monomial> equations;       ///< one per monomial of X(g) − λ g
    std::vector<LinearTerm> linear;
    std::vector<BilinearTerm> bilinear;

    /// Exact residual vector at the given coefficients.
    [[nodiscard]] std::vector<Rational> residual(const std::vector<Rational>& g,
                                                 const std::vector<Rational>& cofactor) const;
    [[nodiscard]] std::optional<std::size_t> equation_index(const Monomial& m) const;
};

BilinearSystem build_bilinear_residual(const VectorField& X, int degree);

/// Exact eigen-method for constant cofactors: restricts X to its largest
/// invariant subspace inside degree ≤ d, then finds the rational eigenvalues.
/// One pair per RREF eigenspace basis vector, constants excluded.
std::vector<DarbouxPair> search_constant_cofactor_exact(const VectorField& X, int degree);

/// Multi-start damped least squares on the bilinear system, followed by
/// exact rationalization and certification. Output is sorted canonically.
std::vector<DarbouxPair> search_numeric(const VectorField& X, const SearchConfig& cfg);

/// Dispatches on cfg.method.
std::vector<DarbouxPair> search(const VectorField& X, const SearchConfig& cfg);

/// RREF basis (monic, constants dropped) of {g : deg g ≤ d, X(g) = λ g}.
std::vector<Polynomial> darboux_space(const VectorField& X, const Polynomial& cofactor, int degree);

Report verify_darboux(const VectorField& X, const DarbouxPair& pair);

/// Pairs not flagged as products of other returned pairs.
std::vector<DarbouxPair> drop_reducible(const std::vector<DarbouxPair>& pairs);

nlohmann::json to_json(const std::vector<DarbouxPair>& pairs, const VarNames& names = kDefaultNames);

}  // namespace polyflow
