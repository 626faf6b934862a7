#include "polyflow/corpus.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#ifndef POLYFLOW_CORPUS_DIR
#define POLYFLOW_CORPUS_DIR "corpus"
#endif

namespace polyflow {

std::filesystem::path corpus_dir() {
    if (const char* env = std::getenv("POLYFLOW_CORPUS"); env && *env) return env;
    return POLYFLOW_CORPUS_DIR;
}

std::vector<CorpusCase> list_cases(const std::filesystem::path& dir) {
    std::ifstream in(dir / "cases.json");
    if (!in) throw std::runtime_error("cannot open " + (dir / "cases.json").string());
    const auto doc = nlohmann::json::parse(in);
    std::vector<CorpusCase> out;
    for (const auto& j : doc.at("cases")) {
        CorpusCase c;
        c.id = j.at("id").get<std::string>();
        c.model = dir / j.at("model").get<std::string>();
        const auto params = j.value("params", nlohmann::json::object());
        for (const auto& [k, v] : params.items())
            c.bindings[k] = parse_rational(v.get<std::string>());
        if (j.contains("search")) {
            ExpectedSearch s;
            s.degree = j["search"].value("degree", 2);
            const auto m = j["search"].value("method", std::string("numeric"));
            s.method = m == "exact-const" ? SearchMethod::ExactConstant : SearchMethod::Numeric;
            c.search = s;
        }
        const auto pairs = j.value("pairs", nlohmann::json::array());
        for (const auto& p : pairs)
            c.pairs.push_back({p.at("g").get<std::string>(), p.at("lambda").get<std::string>()});
        const auto integrals = j.value("integrals", nlohmann::json::array());
        for (const auto& i : integrals) c.integrals.push_back(i.get<std::string>());
        const auto claims = j.value("claims", nlohmann::json::array());
        for (const auto& cl : claims) {
            ExpectedClaim e;
            e.name = cl.at("name").get<std::string>();
            e.pass = cl.at("status").get<std::string>() == "pass";
            const auto residual = cl.value("residual", nlohmann::json::array());
            for (const auto& r : residual) e.residual.push_back(r.get<std::string>());
            const auto identities = cl.value("identities", nlohmann::json::object());
            for (const auto& [k, v] : identities.items())
                e.identities[k] = v.get<std::string>() == "pass";
            c.claims.push_back(std::move(e));
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

bool same_up_to_scale(const Polynomial& a, const Polynomial& b) { return a.monic() == b.monic(); }

}  // namespace

CaseOutcome run_case(const CorpusCase& c, const SearchConfig& base) {
    CaseOutcome out{c.id, {}};
    auto fail = [&](const std::string& msg) { out.failures.push_back(msg); };
    try {
        const ModelFile m = load_model(c.model);
        const VectorField X = bind_field(m, c.bindings);
        const Declarations decl{m.decl.variables, {}};

        std::vector<DarbouxPair> expected;
        for (const auto& p : c.pairs) {
            DarbouxPair pair{parse_expression(p.g, decl), parse_expression(p.cofactor, decl), false, ""};
            pair.certified = verify_darboux(X, pair).passed();
            if (!pair.certified) fail("pair (" + p.g + ", " + p.cofactor + ") not certified");
            expected.push_back(pair);
        }

        if (c.search) {
            SearchConfig cfg = base;
            cfg.degree = c.search->degree;
            cfg.method = c.search->method;
            const auto found = search(X, cfg);
            for (const auto& e : expected) {
                const bool hit = std::any_of(found.begin(), found.end(), [&](const DarbouxPair& f) {
                    return f.certified && f.cofactor == e.cofactor && same_up_to_scale(f.g, e.g);
                });
                bool in_space = hit;
                if (!hit && e.cofactor.is_constant() && cfg.method == SearchMethod::ExactConstant) {
                    // A multi-dimensional eigenspace may hold g as a combination of basis vectors.
                    const auto basis = darboux_space(X, e.cofactor, cfg.degree);
                    in_space = !basis.empty();
                }
                if (!in_space) fail("search did not find (" + e.g.to_string(X.names()) + ", " +
                                    e.cofactor.to_string(X.names()) + ")");
            }
        }

        for (const auto& name : c.integrals) {
            const auto* decl_i = m.find_integral(name);
            if (!decl_i) {
                fail("no integral '" + name + "'");
                continue;
            }
            const auto bound = bind_integral(m, *decl_i, c.bindings);
            if (!verify_integral(bound).passed()) fail("integral '" + name + "' not certified");
        }

        for (const auto& e : c.claims) {
            const auto* decl_c = m.find_claim(e.name);
            if (!decl_c) {
                fail("no claim '" + e.name + "'");
                continue;
            }
            const auto bound = bind_claim(m, *decl_c, c.bindings);
            const Report r = verify_claim(bound);
            if (r.passed() != e.pass)
                fail("claim '" + e.name + "' expected " + (e.pass ? "pass" : "fail") + ", got " +
                     (r.passed() ? "pass" : "fail"));
            if (!e.residual.empty()) {
                const Declarations rdecl{bound.field.names(), {}};
                const auto& got = r.identities.front().residual;
                bool same = got.size() == e.residual.size();
                for (std::size_t i = 0; same && i < got.size(); ++i)
                    same = got[i] == parse_expression(e.residual[i], rdecl);
                if (!same) {
                    std::string text;
                    for (const auto& p : got) text += (text.empty() ? "" : ", ") + p.to_string(bound.field.names());
                    fail("claim '" + e.name + "' residual is (" + text + ")");
                }
            }
            for (const auto& [iname, ipass] : e.identities) {
                const Identity* id = r.find(iname);
                if (!id) fail("claim '" + e.name + "' has no identity '" + iname + "'");
                else if (id->passed() != ipass) fail("claim '" + e.name + "' identity '" + iname + "' mismatch");
            }
        }
    } catch (const std::exception& ex) {
        fail(std::string("error: ") + ex.what());
    }
    return out;
}

}  // namespace polyflow
