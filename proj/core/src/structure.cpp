#include "polyflow/structure.hpp"

#include <Eigen/Eigenvalues>

#include <random>
#include <set>
#include <stdexcept>

namespace polyflow {

std::string to_string(ClaimKind kind) {
    switch (kind) {
        case ClaimKind::PoissonVector: return "poisson-vector";
        case ClaimKind::Hamiltonian: return "hamiltonian";
        case ClaimKind::Nambu: return "nambu";
        case ClaimKind::LastMultiplier: return "last-multiplier";
        case ClaimKind::Metriplectic1: return "metriplectic-1";
        case ClaimKind::Metriplectic2: return "metriplectic-2";
    }
    return "unknown";
}

ClaimKind parse_claim_kind(const std::string& text) {
    for (auto k : {ClaimKind::PoissonVector, ClaimKind::Hamiltonian, ClaimKind::Nambu, ClaimKind::LastMultiplier,
                   ClaimKind::Metriplectic1, ClaimKind::Metriplectic2})
        if (to_string(k) == text) return k;
    throw std::invalid_argument("unknown claim kind '" + text + "'");
}

void StructureSpec::validate() const {
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(to_string(kind) + " claim requires " + what);
    };
    switch (kind) {
        case ClaimKind::PoissonVector: need(J.has_value(), "J"); break;
        case ClaimKind::Hamiltonian:
            need(J.has_value(), "J");
            need(H1.has_value(), "H (H1)");
            break;
        case ClaimKind::Nambu:
            need(H1 && H2, "H1 and H2");
            need(!M.is_zero(), "a nonzero M");
            break;
        case ClaimKind::LastMultiplier: need(!M.is_zero(), "a nonzero M"); break;
        case ClaimKind::Metriplectic1:
        case ClaimKind::Metriplectic2:
            need(G.has_value(), "G");
            need(entropy == Generator::H1 ? H1.has_value() : H2.has_value(), "the generator S (H1 or H2)");
            need(J.has_value() || (H1 && H2), "J or both H1 and H2");
            need(!M.is_zero(), "a nonzero M");
            break;
    }
}

namespace {

using RatioVector = std::array<Ratio, 3>;

RatioVector lift(const PolyVector& v) { return {Ratio(v[0]), Ratio(v[1]), Ratio(v[2])}; }

std::vector<Polynomial> numerators(const RatioVector& v) { return {v[0].num, v[1].num, v[2].num}; }

void add_excluded(std::vector<Polynomial>& out, const Polynomial& d) {
    if (d.is_constant()) return;
    const Polynomial m = d.monic();
    for (const auto& e : out)
        if (e == m) return;
    out.push_back(m);
}

}  // namespace

Report check_jacobi(const PolyVector& J) {
    Report rep;
    rep.subject = "Jacobi identity J.(curl J) = 0";
    rep.identities.push_back({"J.(curl J)", {dot(J, curl(J))}, {}, false, ""});
    rep.witness = {{"J", J.to_string()}};
    return rep;
}

Report check_hamiltonian(const PolyVector& X, const PolyVector& J, const Polynomial& H) {
    Report rep;
    rep.subject = "Hamiltonian form X = J x grad H";
    const PolyVector r = X - cross(J, gradient(H));
    rep.identities.push_back({"X - J x grad H", {r[0], r[1], r[2]}, {}, false, ""});
    rep.identities.push_back({"J.(curl J)", {dot(J, curl(J))}, {}, false, "Jacobi identity of the Poisson vector"});
    rep.witness = {{"J", J.to_string()}, {"H", H.to_string()}};
    return rep;
}

Report check_nambu(const PolyVector& X, const Ratio& M, const Polynomial& H1, const Polynomial& H2) {
    if (M.is_zero()) throw std::invalid_argument("check_nambu: identically zero multiplier");
    Report rep;
    rep.subject = "Nambu form M X = grad H1 x grad H2";
    const PolyVector c = cross(gradient(H1), gradient(H2));
    Identity id{"M*X - grad H1 x grad H2", {}, {}, false, ""};
    for (std::size_t i = 0; i < 3; ++i) id.residual.push_back(M.num * X[i] - M.den * c[i]);
    add_excluded(id.excluded, M.den);
    rep.identities.push_back(std::move(id));
    rep.witness = {{"M", M.to_string()}, {"H1", H1.to_string()}, {"H2", H2.to_string()}};
    return rep;
}

Report check_last_multiplier(const PolyVector& X, const Ratio& M) {
    if (M.is_zero()) throw std::invalid_argument("check_last_multiplier: identically zero multiplier");
    Report rep;
    rep.subject = "Jacobi last multiplier div(M X) = 0";
    const Polynomial residual = M.den * divergence(M.num * X) - M.num * dot(X, gradient(M.den));
    Identity id{"div(M*X)", {residual}, {}, false, ""};
    add_excluded(id.excluded, M.den);
    rep.identities.push_back(std::move(id));
    rep.witness = {{"M", M.to_string()}};
    return rep;
}

Report check_metriplectic(const PolyVector& X, const StructureSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spec.kind != ClaimKind::Metriplectic1 && spec.kind != ClaimKind::Metriplectic2)
        throw std::invalid_argument("check_metriplectic: not a metriplectic claim");
    const RatioMatrix& G = *spec.G;
    const Polynomial& S = spec.entropy == Generator::H1 ? *spec.H1 : *spec.H2;
    const PolyVector gradS = gradient(S);
    const Ratio inv_m{spec.M.den, spec.M.num};

    std::vector<Polynomial> excluded;
    for (const auto& row : G)
        for (const auto& e : row) add_excluded(excluded, e.den);
    add_excluded(excluded, spec.M.num);
    add_excluded(excluded, spec.M.den);

    RatioVector conservative;
    if (spec.J) {
        conservative = lift(cross(*spec.J, gradS));
    } else {
        const PolyVector c = cross(gradient(*spec.H1), gradient(*spec.H2));
        for (std::size_t i = 0; i < 3; ++i) conservative[i] = inv_m * Ratio(c[i]);
    }
    auto apply_g = [&](const PolyVector& v) {
        RatioVector out;
        for (std::size_t i = 0; i < 3; ++i)
            out[i] = G[i][0] * Ratio(v[0]) + G[i][1] * Ratio(v[1]) + G[i][2] * Ratio(v[2]);
        return out;
    };
    const RatioVector dissipative = apply_g(gradS);

    Report rep;
    rep.subject = to_string(spec.kind) + " form X = C + lambda*G grad S";
    RatioVector residual;
    for (std::size_t i = 0; i < 3; ++i)
        residual[i] = conservative[i] + Ratio(spec.lambda) * dissipative[i] - Ratio(X[i]);
    rep.identities.push_back({"C + lambda*G grad S - X", numerators(residual), excluded, false, ""});

    Identity sym{"G symmetric", {}, excluded, false, ""};
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        sym.residual.push_back((G[i][j] - G[j][i]).num);
    rep.identities.push_back(std::move(sym));

    if (spec.kind == ClaimKind::Metriplectic1) {
        // Poisson part N and its Hamiltonian H follow from which function generates the entropy.
        std::optional<RatioVector> n_grad_s;
        std::optional<Polynomial> hamiltonian;
        if (spec.J) {
            n_grad_s = lift(cross(*spec.J, gradS));
            hamiltonian = spec.entropy == Generator::H1 ? spec.H2 : spec.H1;
        } else {
            const bool s_is_h1 = spec.entropy == Generator::H1;
            const PolyVector casimir_grad = gradient(s_is_h1 ? *spec.H1 : *spec.H2);
            const PolyVector c = cross(casimir_grad, gradS);
            RatioVector v;
            for (std::size_t i = 0; i < 3; ++i) v[i] = (s_is_h1 ? inv_m : -inv_m) * Ratio(c[i]);
            n_grad_s = v;
            hamiltonian = s_is_h1 ? spec.H2 : spec.H1;
        }
        if (hamiltonian) {
            const RatioVector g_grad_h = apply_g(gradient(*hamiltonian));
            rep.identities.push_back({"N grad S", numerators(*n_grad_s), excluded, true, "degeneracy condition"});
            rep.identities.push_back({"G grad H", numerators(g_grad_h), excluded, true, "degeneracy condition"});
            RatioVector weak;
            for (std::size_t i = 0; i < 3; ++i) weak[i] = (*n_grad_s)[i] + g_grad_h[i];
            rep.identities.push_back({"N grad S + G grad H", numerators(weak), excluded, true, "weak degeneracy"});
        }
    }

    // Positive semidefiniteness is only sampled, and never decides the verdict.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> clock_pow(-2, 2);
    int sampled = 0, psd = 0;
    for (int attempt = 0; attempt < 200 && sampled < 32; ++attempt) {
        const std::array<double, 4> pt{num(rng) / 4.0, num(rng) / 4.0, num(rng) / 4.0, std::exp2(clock_pow(rng))};
        Eigen::Matrix3d m;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = 0; j < 3 && ok; ++j) {
                const double d = G[i][j].den.eval(pt);
                if (d == 0.0) ok = false;
                else m(i, j) = G[i][j].num.eval(pt) / d;
            }
        if (!ok) continue;
        ++sampled;
        const Eigen::Matrix3d sym_part = 0.5 * (m + m.transpose());
        if (Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(sym_part).eigenvalues().minCoeff() >= -1e-12) ++psd;
    }
    rep.witness = {{"kind", to_string(spec.kind)},
                   {"S", S.to_string()},
                   {"lambda", to_string(spec.lambda)},
                   {"psd_samples", {{"psd", psd}, {"sampled", sampled}}}};
    rep.notes.push_back("G positive semidefinite at " + std::to_string(psd) + " of " + std::to_string(sampled) +
                        " sampled points (diagnostic)");
    return rep;
}

Report check_structure(const PolyVector& X, const StructureSpec& spec, std::uint64_t seed) {
    spec.validate();
    switch (spec.kind) {
        case ClaimKind::PoissonVector: return check_jacobi(*spec.J);
        case ClaimKind::Hamiltonian: return check_hamiltonian(X, *spec.J, *spec.H1);
        case ClaimKind::Nambu: return check_nambu(X, spec.M, *spec.H1, *spec.H2);
        case ClaimKind::LastMultiplier: return check_last_multiplier(X, spec.M);
        case ClaimKind::Metriplectic1:
        case ClaimKind::Metriplectic2: return check_metriplectic(X, spec, seed);
    }
    throw std::logic_error("unreachable claim kind");
}

}  // namespace polyflow
