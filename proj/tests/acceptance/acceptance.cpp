// Acceptance runner: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include "polyflow/basis.hpp"
#include "polyflow/corpus.hpp"
#include "polyflow/darboux.hpp"
#include "polyflow/integral.hpp"
#include "polyflow/model.hpp"
#include "polyflow/ode.hpp"
#include "polyflow/structure.hpp"
#include "polyflow/transform.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace polyflow;

namespace {

// Pinned tolerances and limits.
constexpr double kRecoverySeconds = 10.0;         // criterion 1
constexpr double kDriftTolerance = 1e-6;          // criterion 4
constexpr double kMetriplecticSeconds = 1.0;      // criterion 5, per check
constexpr int kRingInstances = 1000;              // criterion 8
constexpr int kDivCrossPairs = 200;               // criterion 8
constexpr double kOrderRatioLo = 12.0;            // criterion 8
constexpr double kOrderRatioHi = 20.0;            // criterion 8
constexpr double kNegativeControlFloor = 1e-2;    // criterion 9

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        details.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
        pass = pass && ok;
    }
    void info(const std::string& what) { details.push_back("info    " + what); }
};

Polynomial P(std::string_view s) { return parse_expression(s); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

std::string render(const std::vector<Polynomial>& v, const VarNames& names = kDefaultNames) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string(names);
    return s + ")";
}

VectorField bind(const char* file, const Bindings& b) { return bind_field(load_model(corpus_dir() / file), b); }

bool has_pair(const std::vector<DarbouxPair>& pairs, const Polynomial& g, const Polynomial& lambda) {
    for (const auto& p : pairs)
        if (p.certified && p.g.monic() == g.monic() && p.cofactor == lambda) return true;
    return false;
}

SearchConfig numeric_config(int degree) {
    SearchConfig cfg;
    cfg.degree = degree;
    cfg.method = SearchMethod::Numeric;
    return cfg;
}

const CorpusCase& find_case(const std::vector<CorpusCase>& cases, const std::string& id) {
    for (const auto& c : cases)
        if (c.id == id) return c;
    throw std::runtime_error("corpus case " + id + " missing");
}

// ---------------------------------------------------------------------------

Criterion darboux_recovery() {
    Criterion c{1, "Darboux recovery on three-wave (gamma=0, delta=1), d=2"};
    const auto X = bind("three_wave.model", {{"gamma", 0}, {"delta", 1}});
    const auto target = P("y*z - 1/2*z");
    const auto t0 = std::chrono::steady_clock::now();
    const auto numeric = search(X, numeric_config(2));
    auto exact_cfg = numeric_config(2);
    exact_cfg.method = SearchMethod::ExactConstant;
    const auto exact = search(X, exact_cfg);
    const double elapsed = seconds_since(t0);
    c.require(has_pair(numeric, target, P("-2")), "numeric search returns certified (y*z - 1/2*z, -2)");
    c.require(exact.size() == 1 && exact[0].certified && exact[0].g == target && exact[0].cofactor == P("-2"),
              "constant-cofactor method returns exactly (y*z - 1/2*z, -2)");
    c.require(elapsed < kRecoverySeconds, "runtime " + fmt(elapsed) + " s < " + fmt(kRecoverySeconds) + " s");
    for (const auto& p : numeric)
        c.info("numeric: g = " + p.g.to_string() + ", lambda = " + p.cofactor.to_string() +
               (p.note.empty() ? "" : " [" + p.note + "]"));
    return c;
}

Criterion case5_triple() {
    Criterion c{2, "Case-5 triple and rank-2 integral lattice (delta=0, gamma=-1)"};
    const auto X = bind("three_wave.model", {{"gamma", -1}, {"delta", 0}});
    const auto pairs = search(X, numeric_config(2));
    c.require(has_pair(pairs, P("y"), P("2*x - 1")), "(y, 2*x - 1) certified");
    c.require(has_pair(pairs, P("z"), P("-2*x - 2")), "(z, -2*x - 2) certified");
    c.require(has_pair(pairs, P("x^2 + y^2 + z"), P("-2")), "(x^2 + y^2 + z, -2) certified");

    const auto lattice = combine_cofactors(X, drop_reducible(pairs));
    c.require(lattice.size() == 2, "lattice rank " + std::to_string(lattice.size()) + " == 2");
    bool all_certified = true;
    for (const auto& I : lattice) all_certified = all_certified && certify_integral(X, I).passed();
    c.require(all_certified, "every emitted integral certified");

    // Coordinates: one slot per distinct factor, plus the rate.
    std::vector<Polynomial> slots;
    auto slot = [&](const Polynomial& g) {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i] == g.monic()) return i;
        slots.push_back(g.monic());
        return slots.size() - 1;
    };
    for (const auto& I : lattice)
        for (const auto& f : I.factors) slot(f.g);
    const std::vector<std::pair<std::string, FirstIntegral>> targets{
        {"exp(3*t)*y*z", {-3, {{P("y"), 1}, {P("z"), 1}}, {}}},
        {"exp(2*t)*(x^2 + y^2 + z)", {-2, {{P("x^2 + y^2 + z"), 1}}, {}}},
    };
    for (const auto& [name, T] : targets) {
        for (const auto& f : T.factors) slot(f.g);
        const std::size_t dim = slots.size() + 1;
        auto coords = [&](const FirstIntegral& I) {
            QVector v(dim, 0);
            for (const auto& f : I.factors) v[slot(f.g)] += f.exponent;
            v[dim - 1] = I.rate;
            return v;
        };
        std::vector<QVector> cols;
        for (const auto& I : lattice) cols.push_back(coords(I));
        QVector t = coords(T);
        for (auto& e : t) e = -e;
        cols.push_back(t);
        const auto ns = QMatrix::from_columns(cols, dim).nullspace();
        bool member = ns.size() == 1 && ns[0].back() == 1;
        if (member)
            for (std::size_t k = 0; k + 1 < ns[0].size(); ++k) member = member && is_integer(ns[0][k]);
        c.require(member, "lattice contains " + name);
    }
    for (const auto& I : lattice) c.info("I = " + I.to_string());
    return c;
}

Criterion rabinovich_eigenspace() {
    Criterion c{3, "Rabinovich constant-cofactor eigenspace (h=0, nu=1), d=2"};
    const auto X = bind("rabinovich.model", {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}});
    const auto pairs = search_constant_cofactor_exact(X, 2);
    const auto basis = MonomialBasis::spatial(0, 2);
    std::vector<QVector> space;
    for (const auto& p : pairs)
        if (p.cofactor == P("-2") && p.certified) space.push_back(basis.coordinates(p.g));
    c.require(!space.empty(), "eigenvalue -2 found (" + std::to_string(space.size()) + "-dimensional)");
    const auto rank = rref_basis(space).size();
    for (const char* g : {"y^2 + z^2", "x^2 + y^2"}) {
        auto with = space;
        with.push_back(basis.coordinates(P(g)));
        c.require(!space.empty() && rref_basis(with).size() == rank, std::string("eigenspace contains ") + g);
    }
    for (const auto& p : pairs) c.info("lambda = " + p.cofactor.to_string() + ": " + p.g.to_string());
    return c;
}

Criterion integral_certification() {
    Criterion c{4, "Every corpus integral: sum n*lambda - r = 0 exactly, probe drift < 1e-6"};
    const std::set<std::string> systems{"three_wave.model", "rabinovich.model", "hindmarsh_rose.model",
                                        "oregonator.model"};
    const auto cases = list_cases();
    std::set<std::string> seen;
    for (const auto& cc : cases) {
        const auto file = cc.model.filename().string();
        if (!systems.count(file)) continue;
        const auto m = load_model(cc.model);
        for (const auto& name : cc.integrals) {
            const auto* decl = m.find_integral(name);
            if (!decl) {
                c.require(false, cc.id + ": integral " + name + " missing");
                continue;
            }
            seen.insert(file + ":" + name);
            const auto bound = bind_integral(m, *decl, cc.bindings);
            const auto rep = certify_integral(bound.field, bound.integral);
            const auto* id = rep.find("sum n*lambda - r");
            const bool exact = rep.passed() && id && id->residual.size() == 1 && id->residual[0].is_zero();
            const auto probe = probe_drift(bound.field, bound.integral);
            std::size_t skipped = 0, truncated = 0;
            for (const auto& d : probe.drifts) skipped += d.skipped;
            for (bool t : probe.truncated) truncated += t;
            const bool drift_ok = probe.usable > 0 && probe.max_drift < kDriftTolerance;
            c.require(exact && drift_ok, cc.id + " " + name + ": I = " + bound.integral.to_string() + ", exact " +
                                             (exact ? "yes" : "no") + ", drift " + fmt(probe.max_drift) + " over " +
                                             std::to_string(probe.usable) + " starts" +
                                             (skipped ? ", " + std::to_string(skipped) + " samples skipped" : "") +
                                             (truncated ? ", " + std::to_string(truncated) + " truncated" : ""));
        }
    }
    for (const char* required :
         {"three_wave.model:case1", "three_wave.model:case2", "three_wave.model:case3", "three_wave.model:case4",
          "three_wave.model:case5-yz", "three_wave.model:case5-g3", "rabinovich.model:I1", "rabinovich.model:I2",
          "hindmarsh_rose.model:item1", "hindmarsh_rose.model:item2", "hindmarsh_rose.model:item3",
          "hindmarsh_rose.model:item4", "hindmarsh_rose.model:item5", "hindmarsh_rose.model:item6",
          "oregonator.model:sum"})
        c.require(seen.count(required), std::string("covered: ") + required);
    return c;
}

Criterion metriplectic_passes() {
    Criterion c{5, "Exact metriplectic passes (Rabinovich, Hindmarsh-Rose instance, three-wave case 5)"};
    auto run = [&](const char* file, const char* claim, const Bindings& b, const std::string& label, bool counted) {
        const auto m = load_model(corpus_dir() / file);
        const auto bound = bind_claim(m, *m.find_claim(claim), b);
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = check_metriplectic(bound.field.components(), *bound.structure);
        const double elapsed = seconds_since(t0);
        const auto& res = rep.find("C + lambda*G grad S - X")->residual;
        bool zero = true;
        for (const auto& r : res) zero = zero && r.is_zero();
        const std::string line = label + ": residual " + render(res, bound.field.names()) + ", " + fmt(elapsed) + " s";
        if (counted) {
            c.require(zero, line);
            c.require(elapsed < kMetriplecticSeconds, label + ": runtime < " + fmt(kMetriplecticSeconds) + " s");
        } else {
            c.info(line + (zero ? " (passes)" : " (fails)"));
        }
    };
    run("rabinovich.model", "metriplectic", {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}}, "Rabinovich", true);
    const Bindings hr{{"a", 1}, {"b", 1}, {"d", 1}, {"p", 1}, {"beta", 1}, {"gamma", 0}, {"r", -1}, {"alpha", 1}};
    run("hindmarsh_rose.model", "metriplectic", hr, "Hindmarsh-Rose a=b=d=p=beta=alpha=1, gamma=0, r=-1", true);
    run("three_wave.model", "case5-metriplectic", {{"gamma", -1}, {"delta", 0}}, "three-wave case 5", true);
    Bindings hr_fixed = hr;
    hr_fixed["alpha"] = -1;
    run("hindmarsh_rose.model", "metriplectic", hr_fixed, "Hindmarsh-Rose with alpha = gamma - beta = -1", false);
    return c;
}

Criterion faithful_failures() {
    Criterion c{6, "Faithful failure reporting (uncorrected three-wave metriplectic claim, Oregonator Jacobi)"};
    const auto cases = list_cases();
    const auto& rt = find_case(cases, "three-wave/damped-metriplectic");
    const auto m = load_model(rt.model);
    auto residual = [&](const char* claim) {
        const auto bound = bind_claim(m, *m.find_claim(claim), rt.bindings);
        const auto rep = check_metriplectic(bound.field.components(), *bound.structure);
        return std::pair{rep.passed(), rep.find("C + lambda*G grad S - X")->residual};
    };
    // Independent expansion: with H2 = x^2 + y^2 + e^{-2t} z and G33 = 2 z e^{2t},
    // the third generator term is 2z, so C + lambda*G grad S - X = (z e^{-2t} - z, 0, 0).
    const auto [raw_ok, raw] = residual("damped-metriplectic");
    c.require(!raw_ok && raw == std::vector<Polynomial>{P("exp(-2*t)*z - z"), Polynomial(), Polynomial()},
              "uncorrected: residual " + render(raw) + " == (exp(-2*t)*z - z, 0, 0)");
    const auto [h2_ok, h2] = residual("damped-metriplectic-h2-only");
    c.require(h2_ok, "H2's exp(-2*t)*z replaced by z: " + std::string(h2_ok ? "passes" : "residual " + render(h2)));
    const auto [fixed_ok, fixed] = residual("damped-metriplectic-consistent");
    c.info("H2 = x^2 + y^2 + z with G33 = 2*z: " + std::string(fixed_ok ? "passes" : "residual " + render(fixed)));

    const auto& oc = find_case(cases, "oregonator/jacobi");
    const auto om = load_model(oc.model);
    const auto jac = bind_claim(om, *om.find_claim("jacobi"), oc.bindings);
    const auto jrep = check_jacobi(*jac.structure->J);
    c.require(!jrep.passed() && !jrep.identities.at(0).residual.at(0).is_zero(),
              "Oregonator J.(curl J) = " + jrep.identities.at(0).residual.at(0).to_string(jac.field.names()));
    const auto ham = bind_claim(om, *om.find_claim("hamiltonian"), oc.bindings);
    const auto hrep = check_hamiltonian(ham.field.components(), *ham.structure->J, *ham.structure->H1);
    c.require(hrep.find("X - J x grad H")->passed(), "Oregonator X = J x grad H holds exactly");
    return c;
}

Criterion transform_fidelity() {
    Criterion c{7, "Exponential transform fidelity and autonomy flags"};
    const VarNames uvw{"u", "v", "w"};
    const Declarations d{uvw, {}};
    auto V = [&](const char* a, const char* b, const char* e) {
        return PolyVector{parse_expression(a, d), parse_expression(b, d), parse_expression(e, d)};
    };
    const auto tw5 = bind("three_wave.model", {{"gamma", -1}, {"delta", 0}});
    const auto sys = transform(tw5, {{1, 1, 2}, 1}, uvw);
    c.require(sys.components() == V("-2*v^2 + w", "2*u*v", "-2*u*w"),
              "three-wave case 5, scale (1,1,2), clock 1: " + sys.components().to_string(uvw));
    const auto rabi = bind("rabinovich.model", {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}});
    const auto div_free = transform(rabi, {{1, 1, 1}, 1}, uvw);
    c.require(div_free.components() == V("v*w", "-u*w", "u*v"),
              "Rabinovich, scale (1,1,1), clock 1: " + div_free.components().to_string(uvw));
    const auto c1 = transform(bind("three_wave.model", {{"gamma", 0}, {"delta", 1}}), {{0, 0, 2}, 0}, uvw);
    const auto r1 = autonomy_report(c1.components());
    c.require(!r1.autonomous && r1.surviving_powers == std::vector<int>{-2},
              "case 1, scale (0,0,2): non-autonomous with power -2");
    const auto c3 = transform(bind("three_wave.model", {{"gamma", -2}, {"delta", 1}}), {{2, 2, 2}, 0}, uvw);
    const auto r3 = autonomy_report(c3.components());
    c.require(!r3.autonomous && r3.surviving_powers == std::vector<int>{-2},
              "case 3, scale (2,2,2): non-autonomous with power -2");
    return c;
}

Polynomial random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 5), e(0, 3), es(-2, 2), num(-9, 9), den(1, 4);
    Polynomial p;
    for (int n = nterms(rng); n > 0; --n) {
        const Monomial m(e(rng), e(rng), e(rng) % 2, es(rng));
        const int a = num(rng);
        const int b = den(rng);
        p += Polynomial::term(m, Rational(a, b));
    }
    return p;
}

Criterion property_suites() {
    Criterion c{8, "Property suites"};
    std::mt19937_64 rng(8);
    int failures = 0;
    for (int i = 0; i < kRingInstances; ++i) {
        const auto a = random_poly(rng), b = random_poly(rng), e = random_poly(rng);
        failures += !((a + b) + e == a + (b + e));
        failures += !((a * b) * e == a * (b * e));
        failures += !(a + b == b + a);
        failures += !(a * b == b * a);
        failures += !(a * (b + e) == a * b + a * e);
        for (Var v : {Var::X, Var::Y, Var::Z, Var::S}) failures += !((a * b).diff(v) == a.diff(v) * b + a * b.diff(v));
    }
    c.require(failures == 0, "ring and Leibniz axioms on " + std::to_string(kRingInstances) + " random instances: " +
                                 std::to_string(failures) + " failures");

    int div_failures = 0;
    for (int i = 0; i < kDivCrossPairs; ++i)
        div_failures += !divergence(cross(gradient(random_poly(rng)), gradient(random_poly(rng)))).is_zero();
    c.require(div_failures == 0, "div(grad a x grad b) = 0 on " + std::to_string(kDivCrossPairs) + " pairs: " +
                                     std::to_string(div_failures) + " failures");

    const VectorField euler(PolyVector{P("x"), P("y"), P("z")});
    auto err = [&](double h) { return std::abs(integrate(euler, {1, 1, 1}, 0, 1, h).states.back()[0] - std::exp(1.0)); };
    const double ratio = err(0.02) / err(0.01);
    c.require(ratio >= kOrderRatioLo && ratio <= kOrderRatioHi,
              "RK4 error ratio on halving h: " + fmt(ratio) + " in [12, 20]");

    const auto X = bind("three_wave.model", {{"gamma", -1}, {"delta", 0}});
    auto cfg = numeric_config(2);
    std::string reference;
    bool identical = true;
    for (unsigned threads : {1u, 2u, 4u, 8u}) {
        cfg.threads = threads;
        const auto json = to_json(search(X, cfg)).dump();
        if (reference.empty()) reference = json;
        identical = identical && json == reference;
    }
    c.require(identical, "search JSON byte-identical for 1, 2, 4, 8 threads");
    return c;
}

Criterion negative_controls() {
    Criterion c{9, "Negative controls"};
    const auto X5 = bind("three_wave.model", {{"gamma", -1}, {"delta", 0}});
    const auto rep = verify_darboux(X5, {P("y"), P("2*x + 1"), false, ""});
    const auto& res = rep.identities.at(0).residual;
    c.require(!rep.passed() && res.size() == 1 && res[0] == P("2*y"),
              "(y, 2*x + 1) rejected with residual " + (res.empty() ? std::string("?") : res[0].to_string()));
    for (const auto& [g, d] : std::vector<std::pair<Rational, Rational>>{
             {0, 1}, {-1, 1}, {-2, 1}, {Rational(1, 2), 0}, {-1, 0}}) {
        const auto X = bind("three_wave.model", {{"gamma", g}, {"delta", d}});
        const auto probe = probe_drift(X, P("x"));
        c.require(probe.max_drift > kNegativeControlFloor, "I = x at gamma=" + to_string(g) + ", delta=" +
                                                                to_string(d) + ": drift " + fmt(probe.max_drift));
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::function<Criterion()>> checks{darboux_recovery,      case5_triple,       rabinovich_eigenspace,
                                                         integral_certification, metriplectic_passes, faithful_failures,
                                                         transform_fidelity,    property_suites,    negative_controls};
    int failed = 0;
    for (const auto& check : checks) {
        Criterion c{0, ""};
        try {
            c = check();
        } catch (const std::exception& e) {
            c.pass = false;
            c.details.push_back(std::string("error: ") + e.what());
        }
        failed += !c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << '\n';
        for (const auto& d : c.details) std::cout << "        " << d << '\n';
    }
    std::cout << (checks.size() - failed) << "/" << checks.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
