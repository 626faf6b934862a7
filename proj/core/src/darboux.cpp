#include "polyflow/darboux.hpp"

#include "polyflow/basis.hpp"
#include "polyflow/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace polyflow {

void SearchConfig::validate() const {
    if (degree < 1) throw std::invalid_argument("search degree must be >= 1");
    if (starts < 1) throw std::invalid_argument("start count must be positive");
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
    if (denom_bound < 1) throw std::invalid_argument("denominator bound must be positive");
    if (max_iterations < 1) throw std::invalid_argument("iteration cap must be positive");
}

std::vector<Rational> BilinearSystem::residual(const std::vector<Rational>& g,
                                               const std::vector<Rational>& cofactor) const {
    if (g.size() != g_basis.size() || cofactor.size() != cofactor_basis.size())
        throw std::invalid_argument("residual: coefficient vector size mismatch");
    std::vector<Rational> r(equations.size(), Rational(0));
    for (const auto& t : linear) r[t.equation] += t.coeff * g[t.g];
    for (const auto& t : bilinear) r[t.equation] += t.coeff * g[t.g] * cofactor[t.cofactor];
    return r;
}

std::optional<std::size_t> BilinearSystem::equation_index(const Monomial& m) const {
    auto it = std::find(equations.begin(), equations.end(), m);
    if (it == equations.end()) return std::nullopt;
    return static_cast<std::size_t>(it - equations.begin());
}

namespace {

void require_autonomous(const VectorField& X) {
    if (!X.is_autonomous()) throw std::invalid_argument("Darboux search requires an autonomous (s-free) field");
}

}  // namespace

BilinearSystem build_bilinear_residual(const VectorField& X, int degree) {
    require_autonomous(X);
    if (degree < 1) throw std::invalid_argument("search degree must be >= 1");
    BilinearSystem sys;
    sys.g_basis = MonomialBasis::spatial(0, degree).monomials();
    sys.cofactor_basis = MonomialBasis::spatial(0, X.degree() - 1).monomials();

    std::vector<Polynomial> images;
    std::set<Monomial, std::greater<>> eq_monos;
    for (const auto& b : sys.g_basis) {
        images.push_back(apply_derivation(X, Polynomial::term(b)));
        for (const auto& [m, c] : images.back().terms()) eq_monos.insert(m);
        for (const auto& l : sys.cofactor_basis) eq_monos.insert(b * l);
    }
    sys.equations.assign(eq_monos.begin(), eq_monos.end());
    std::map<Monomial, std::size_t> index;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) index[sys.equations[e]] = e;

    for (std::size_t i = 0; i < sys.g_basis.size(); ++i) {
        for (const auto& [m, c] : images[i].terms()) sys.linear.push_back({index.at(m), i, c});
        for (std::size_t j = 0; j < sys.cofactor_basis.size(); ++j)
            sys.bilinear.push_back({index.at(sys.g_basis[i] * sys.cofactor_basis[j]), i, j, Rational(-1)});
    }
    return sys;
}

std::vector<Polynomial> darboux_space(const VectorField& X, const Polynomial& cofactor, int degree) {
    require_autonomous(X);
    if (!cofactor.is_s_free()) throw std::invalid_argument("cofactor must be s-free");
    const auto domain = MonomialBasis::spatial(0, degree);
    const auto range = MonomialBasis::spatial(0, degree + std::max(X.degree() - 1, cofactor.degree()));
    QMatrix op(range.size(), domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const Polynomial b = Polynomial::term(domain[i]);
        const auto col = range.coordinates(apply_derivation(X, b) - cofactor * b);
        for (std::size_t r = 0; r < range.size(); ++r) op(r, i) = col[r];
    }
    std::vector<Polynomial> out;
    for (const auto& v : rref_basis(op.nullspace())) {
        Polynomial g = domain.polynomial(v);
        if (!g.is_constant()) out.push_back(g.monic());
    }
    return out;
}

Report verify_darboux(const VectorField& X, const DarbouxPair& pair) {
    Report rep;
    rep.subject = "darboux pair on " + X.name();
    rep.names = X.names();
    rep.identities.push_back({"lambda*g - X(g)", {pair.cofactor * pair.g - apply_derivation(X, pair.g)}, {}, false, ""});
    rep.witness = {{"g", pair.g.to_string(X.names())}, {"lambda", pair.cofactor.to_string(X.names())}};
    if (pair.g.is_constant()) rep.notes.emplace_back("g is constant; constants are excluded from Darboux search");
    return rep;
}

namespace {

DarbouxPair certified_pair(const VectorField& X, Polynomial g, Polynomial cofactor) {
    DarbouxPair p{std::move(g), std::move(cofactor), false, ""};
    p.certified = verify_darboux(X, p).passed();
    return p;
}

bool pair_less(const DarbouxPair& a, const DarbouxPair& b) {
    if (a.g.degree() != b.g.degree()) return a.g.degree() < b.g.degree();
    if (a.g != b.g) return canonical_less(a.g, b.g);
    return canonical_less(a.cofactor, b.cofactor);
}

// Sorts, removes duplicates, and flags pairs whose g is a product of two
// other returned polynomials (no factorization is attempted beyond that).
std::vector<DarbouxPair> finalize(std::vector<DarbouxPair> pairs) {
    std::sort(pairs.begin(), pairs.end(), pair_less);
    pairs.erase(std::unique(pairs.begin(), pairs.end(),
                            [](const DarbouxPair& a, const DarbouxPair& b) {
                                return a.g == b.g && a.cofactor == b.cofactor;
                            }),
                pairs.end());
    for (auto& p : pairs) {
        if (p.g.degree() < 2) continue;
        for (std::size_t i = 0; i < pairs.size() && p.note.empty(); ++i)
            for (std::size_t j = i; j < pairs.size(); ++j) {
                const auto& a = pairs[i];
                const auto& b = pairs[j];
                if (a.g.degree() + b.g.degree() != p.g.degree() || a.g.degree() == 0 || b.g.degree() == 0) continue;
                if ((a.g * b.g).monic() == p.g) {
                    p.note = "reducible: (" + a.g.to_string() + ")*(" + b.g.to_string() + ")";
                    break;
                }
            }
    }
    return pairs;
}

}  // namespace

std::vector<DarbouxPair> search_constant_cofactor_exact(const VectorField& X, int degree) {
    require_autonomous(X);
    if (degree < 1) throw std::invalid_argument("search degree must be >= 1");
    const auto domain = MonomialBasis::spatial(0, degree);
    const auto range = MonomialBasis::spatial(0, degree + X.degree() - 1);
    const std::size_t n = domain.size(), big = range.size();

    // Images of the domain basis, and the embedding of the domain into the range.
    QMatrix image(big, n), embed(big, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto col = range.coordinates(apply_derivation(X, Polynomial::term(domain[i])));
        for (std::size_t r = 0; r < big; ++r) image(r, i) = col[r];
        embed(range.index(domain[i]), i) = 1;
    }

    // Shrink U (columns in domain coordinates) until X(U) ⊆ U. The first pass
    // is exactly "coefficients of X(g) above degree d vanish".
    QMatrix u = QMatrix::identity(n);
    while (u.cols() > 0) {
        const QMatrix eu = embed * u;
        const auto annihilator = eu.transpose().nullspace();
        if (annihilator.empty()) break;
        QMatrix p(annihilator.size(), big);
        for (std::size_t r = 0; r < annihilator.size(); ++r)
            for (std::size_t c = 0; c < big; ++c) p(r, c) = annihilator[r][c];
        const auto kernel = (p * image * u).nullspace();
        if (kernel.size() == u.cols()) break;
        if (kernel.empty()) return {};
        u = u * QMatrix::from_columns(kernel, u.cols());
    }
    const std::size_t k = u.cols();
    if (k == 0) return {};

    // Matrix of X on U: solve (embed*U) A = image*U via RREF of the augmented system.
    const QMatrix eu = embed * u, xu = image * u;
    QMatrix aug(big, 2 * k);
    for (std::size_t r = 0; r < big; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            aug(r, c) = eu(r, c);
            aug(r, k + c) = xu(r, c);
        }
    aug.rref();
    QMatrix a(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) a(r, c) = aug(r, k + c);

    std::vector<DarbouxPair> pairs;
    for (const auto& lambda : rational_roots(characteristic_polynomial(a))) {
        QMatrix shifted = a;
        for (std::size_t i = 0; i < k; ++i) shifted(i, i) -= lambda;
        std::vector<QVector> eigvecs;
        for (const auto& c : shifted.nullspace()) eigvecs.push_back(u.apply(c));
        for (const auto& v : rref_basis(eigvecs)) {
            Polynomial g = domain.polynomial(v);
            if (g.is_constant()) continue;
            auto p = certified_pair(X, g.monic(), Polynomial(lambda));
            if (p.certified) pairs.push_back(std::move(p));
        }
    }
    return finalize(std::move(pairs));
}

namespace {

struct NumericSystem {
    std::size_t ng = 0, nc = 0, neq = 0, constant_g = 0;
    struct Lin {
        std::size_t e, g;
        double c;
    };
    struct Bil {
        std::size_t e, g, l;
        double c;
    };
    std::vector<Lin> lin;
    std::vector<Bil> bil;

    explicit NumericSystem(const BilinearSystem& sys)
        : ng(sys.g_basis.size()), nc(sys.cofactor_basis.size()), neq(sys.equations.size()) {
        for (std::size_t i = 0; i < ng; ++i)
            if (sys.g_basis[i] == Monomial{}) constant_g = i;
        for (const auto& t : sys.linear) lin.push_back({t.equation, t.g, t.coeff.get_d()});
        for (const auto& t : sys.bilinear) bil.push_back({t.equation, t.g, t.cofactor, t.coeff.get_d()});
    }

    Eigen::VectorXd residual(const Eigen::VectorXd& th) const {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(neq));
        for (const auto& t : lin) f[t.e] += t.c * th[t.g];
        for (const auto& t : bil) f[t.e] += t.c * th[t.g] * th[ng + t.l];
        return f;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& th) const {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(neq), static_cast<Eigen::Index>(ng + nc));
        for (const auto& t : lin) j(t.e, t.g) += t.c;
        for (const auto& t : bil) {
            j(t.e, t.g) += t.c * th[ng + t.l];
            j(t.e, ng + t.l) += t.c * th[t.g];
        }
        return j;
    }

    // Unit length on the non-constant part of g; false if it vanished.
    bool normalize(Eigen::VectorXd& th) const {
        double norm2 = 0;
        for (std::size_t i = 0; i < ng; ++i)
            if (i != constant_g) norm2 += th[i] * th[i];
        if (!(norm2 > 1e-24) || !std::isfinite(norm2)) return false;
        th.head(static_cast<Eigen::Index>(ng)) /= std::sqrt(norm2);
        return true;
    }
};

std::optional<Eigen::VectorXd> run_start(const NumericSystem& ns, const SearchConfig& cfg, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd th(static_cast<Eigen::Index>(ns.ng + ns.nc));
    for (Eigen::Index i = 0; i < th.size(); ++i)
        th[i] = gauss(rng) * (static_cast<std::size_t>(i) < ns.ng ? 1.0 : 2.0);
    if (!ns.normalize(th)) return std::nullopt;

    double cost = ns.residual(th).squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (std::sqrt(cost) < cfg.tolerance) break;
        const Eigen::VectorXd f = ns.residual(th);
        const Eigen::MatrixXd j = ns.jacobian(th);
        const Eigen::MatrixXd jtj = j.transpose() * j;
        const Eigen::VectorXd grad = j.transpose() * f;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd damped = jtj;
            for (Eigen::Index i = 0; i < damped.rows(); ++i) damped(i, i) += mu * (1.0 + jtj(i, i));
            Eigen::VectorXd trial = th - damped.ldlt().solve(grad);
            if (!trial.allFinite() || !ns.normalize(trial)) {
                mu *= 4;
                continue;
            }
            const double tc = ns.residual(trial).squaredNorm();
            if (tc < cost) {
                th = trial;
                cost = tc;
                mu = std::max(mu / 3, 1e-15);
                accepted = true;
            } else {
                mu *= 4;
            }
        }
        if (!accepted) break;
    }
    if (!(ns.residual(th).lpNorm<Eigen::Infinity>() < cfg.tolerance)) return std::nullopt;
    return th;
}

}  // namespace

std::vector<DarbouxPair> search_numeric(const VectorField& X, const SearchConfig& cfg) {
    cfg.validate();
    const BilinearSystem sys = build_bilinear_residual(X, cfg.degree);
    const NumericSystem ns(sys);

    const auto nstarts = static_cast<std::size_t>(cfg.starts);
    std::vector<std::optional<Eigen::VectorXd>> results(nstarts);
    unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(nstarts));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < nstarts; i = next++) results[i] = run_start(ns, cfg, i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Merge in start order: exact work below is a pure function of each candidate.
    const MonomialBasis gb(sys.g_basis), cb(sys.cofactor_basis);
    std::vector<DarbouxPair> pairs;
    std::set<std::string> seen_cofactors;
    for (const auto& r : results) {
        if (!r) continue;
        const Eigen::VectorXd& th = *r;
        QVector lam(ns.nc);
        for (std::size_t j = 0; j < ns.nc; ++j) lam[j] = best_rational(th[static_cast<Eigen::Index>(ns.ng + j)], cfg.denom_bound);
        const Polynomial cofactor = cb.polynomial(lam);
        if (!seen_cofactors.insert(cofactor.to_string()).second) continue;
        auto space = darboux_space(X, cofactor, cfg.degree);
        for (auto& g : space) {
            auto p = certified_pair(X, std::move(g), cofactor);
            if (p.certified) pairs.push_back(std::move(p));
        }
        if (!space.empty()) continue;

        // Fallback: rationalize g directly and recover its cofactor by exact division.
        double peak = 0;
        for (std::size_t i = 0; i < ns.ng; ++i) peak = std::max(peak, std::abs(th[static_cast<Eigen::Index>(i)]));
        std::size_t lead = ns.ng;
        for (std::size_t i = 0; i < ns.ng; ++i)
            if (std::abs(th[static_cast<Eigen::Index>(i)]) > 1e-6 * peak) {
                lead = i;
                break;
            }
        if (lead == ns.ng) continue;
        QVector gv(ns.ng);
        for (std::size_t i = 0; i < ns.ng; ++i) {
            const double v = th[static_cast<Eigen::Index>(i)] / th[static_cast<Eigen::Index>(lead)];
            gv[i] = std::abs(v) < 1e-9 ? Rational(0) : best_rational(v, cfg.denom_bound);
        }
        const Polynomial g = gb.polynomial(gv);
        if (g.is_constant()) continue;
        if (auto q = apply_derivation(X, g).divide_exact(g); q && q->degree() <= X.degree() - 1) {
            auto p = certified_pair(X, g.monic(), *q);
            if (p.certified) pairs.push_back(std::move(p));
        }
    }
    return finalize(std::move(pairs));
}

std::vector<DarbouxPair> search(const VectorField& X, const SearchConfig& cfg) {
    cfg.validate();
    return cfg.method == SearchMethod::ExactConstant ? search_constant_cofactor_exact(X, cfg.degree)
                                                     : search_numeric(X, cfg);
}

std::vector<DarbouxPair> drop_reducible(const std::vector<DarbouxPair>& pairs) {
    std::vector<DarbouxPair> out;
    for (const auto& p : pairs)
        if (p.note.rfind("reducible", 0) != 0) out.push_back(p);
    return out;
}

nlohmann::json to_json(const std::vector<DarbouxPair>& pairs, const VarNames& names) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pairs) {
        nlohmann::json e{{"g", p.g.to_string(names)},
                         {"lambda", p.cofactor.to_string(names)},
                         {"status", p.certified ? "certified" : "uncertified"},
                         {"irreducibility", "untested"}};
        if (!p.note.empty()) e["note"] = p.note;
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace polyflow
