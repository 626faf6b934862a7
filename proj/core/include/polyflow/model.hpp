#pragma once

#include "polyflow/darboux.hpp"
#include "polyflow/integral.hpp"
#include "polyflow/parser.hpp"
#include "polyflow/structure.hpp"
#include "polyflow/transform.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyflow {

// Model files are line oriented. Blank lines and text after '#' are ignored.
//
//   [model]              name, variables (three), parameters, description
//   [field]              x' = ..., y' = ..., z' = ...
//   [transform]          scale = a1, a2, a3; clock = c; variables = u, v, w
//   [claim NAME]         kind plus kind-specific keys (see ClaimDecl)
//   [integral NAME]      rate = r; factor = g ; n (repeatable)
//
// Claim and integral sections may pin parameters with
// `params = gamma = -1, delta = 0`.

struct TransformDecl {
    ExpScaling scaling;
    VarNames variables = kDefaultNames;
};

/// Keys by kind:
///   darboux          g, cofactor
///   poisson-vector   J = a, b, c
///   hamiltonian      J, H
///   nambu            H1, H2, M (default 1)
///   last-multiplier  M
///   metriplectic-1/2 G = row ; row ; row, S = H1|H2, lambda, and J + H or H1, H2, M
/// A claim is checked against the model's transformed field when a
/// [transform] section exists, unless it sets `transform = none` or its own
/// scale/clock/variables.
struct ClaimDecl {
    std::string name;
    std::string kind;
    int line = 0;
    std::optional<TransformDecl> transform;
    std::vector<std::pair<std::string, Expr>> params;
    std::map<std::string, Expr> scalars;  ///< g, cofactor, H1, H2, M, lambda
    std::optional<std::array<Expr, 3>> J;
    std::optional<std::array<std::array<Expr, 3>, 3>> G;
    Generator entropy = Generator::H1;
};

struct IntegralDecl {
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, Expr>> params;
    Expr rate;
    std::vector<std::pair<Expr, Expr>> factors;  ///< (g, exponent)
};

struct ModelFile {
    std::string name;
    std::string description;
    Declarations decl;
    std::array<Expr, 3> field;
    std::array<std::string, 3> field_text;
    std::optional<TransformDecl> transform;
    std::vector<ClaimDecl> claims;
    std::vector<IntegralDecl> integrals;

    [[nodiscard]] const ClaimDecl* find_claim(std::string_view name) const;
    [[nodiscard]] const IntegralDecl* find_integral(std::string_view name) const;
};

/// Syntax, declarations and identifiers are checked here; parameter values
/// are only needed by the bind functions.
ModelFile parse_model(std::string_view text);
/// Reads and parses a file; errors are prefixed with the path.
ModelFile load_model(const std::filesystem::path& path);

/// Parses "name=value" (value a constant expression) into bindings.
void add_binding(Bindings& bindings, std::string_view assignment);

/// The field with every parameter bound. Unknown or missing parameters are
/// errors.
VectorField bind_field(const ModelFile& model, const Bindings& bindings);

struct BoundClaim {
    std::string name;
    std::string kind;
    Bindings bindings;
    /// The field the claim is about (transformed when a transform applies).
    VectorField field;
    std::optional<ExpScaling> scaling;
    std::optional<StructureSpec> structure;
    std::optional<DarbouxPair> darboux;
};

struct BoundIntegral {
    std::string name;
    Bindings bindings;
    VectorField field;
    FirstIntegral integral;
};

/// Pinned claim parameters are merged into `bindings`; a conflicting value is
/// an error.
BoundClaim bind_claim(const ModelFile& model, const ClaimDecl& claim, const Bindings& bindings);
BoundIntegral bind_integral(const ModelFile& model, const IntegralDecl& integral, const Bindings& bindings);

Report verify_claim(const BoundClaim& claim, std::uint64_t seed = 0);
Report verify_integral(const BoundIntegral& integral);

}  // namespace polyflow
