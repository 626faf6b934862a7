#pragma once

#include "polyflow/ratio.hpp"
#include "polyflow/report.hpp"
#include "polyflow/vector_field.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace polyflow {

enum class ClaimKind : std::uint8_t {
    PoissonVector,
    Hamiltonian,
    Nambu,
    LastMultiplier,
    Metriplectic1,
    Metriplectic2,
};

std::string to_string(ClaimKind kind);
/// "poisson-vector", "hamiltonian", ... ; throws std::invalid_argument otherwise.
ClaimKind parse_claim_kind(const std::string& text);

using RatioMatrix = std::array<std::array<Ratio, 3>, 3>;

enum class Generator : std::uint8_t { H1, H2 };

/// Data of one structural claim. Which fields are needed depends on `kind`:
///   poisson-vector  J
///   hamiltonian     J, H1 (the Hamiltonian)
///   nambu           H1, H2, M
///   last-multiplier M
///   metriplectic-*  G, S ∈ {H1, H2}, and either J or (H1, H2, M)
/// Metriplectic flows are X = C + lambda * G ∇S with the conservative part
/// C = J × ∇S when J is given and C = (1/M) ∇H1 × ∇H2 otherwise.
struct StructureSpec {
    ClaimKind kind = ClaimKind::PoissonVector;
    std::optional<PolyVector> J;
    std::optional<Polynomial> H1, H2;
    Ratio M{1};
    std::optional<RatioMatrix> G;
    Generator entropy = Generator::H1;
    Rational lambda{-1};

    /// Throws std::invalid_argument when a field required by `kind` is missing.
    void validate() const;
};

Report check_jacobi(const PolyVector& J);
/// X − J × ∇H, plus the Jacobi identity of J as a separate identity.
Report check_hamiltonian(const PolyVector& X, const PolyVector& J, const Polynomial& H);
/// M X − ∇H1 × ∇H2 with denominators cleared. Throws for identically zero M.
Report check_nambu(const PolyVector& X, const Ratio& M, const Polynomial& H1, const Polynomial& H2);
/// div(M X) = 0, cleared: den(M) div(num(M) X) − num(M) X·∇den(M).
Report check_last_multiplier(const PolyVector& X, const Ratio& M);
/// Main identity X − C − lambda G∇S, symmetry of G, kind-1 compatibility
/// residuals (diagnostic), and a sampled PSD diagnostic.
Report check_metriplectic(const PolyVector& X, const StructureSpec& spec, std::uint64_t seed = 0);

/// Dispatches on spec.kind.
Report check_structure(const PolyVector& X, const StructureSpec& spec, std::uint64_t seed = 0);

}  // namespace polyflow
