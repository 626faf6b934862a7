#include "cli.hpp"

#include "polyflow/corpus.hpp"
#include "polyflow/darboux.hpp"
#include "polyflow/integral.hpp"
#include "polyflow/model.hpp"
#include "polyflow/ode.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace polyflow::cli {

namespace {

struct Common {
    std::string model;
    std::vector<std::string> params;
    bool json = false;
    std::uint64_t seed = 0;
};

struct SearchOpts {
    int degree = 2;
    std::string method = "numeric";
    long denom_bound = 64;
    int starts = 200;
    unsigned threads = 0;
    double tolerance = 1e-10;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("model", c.model, "model file")->required();
    cmd->add_option("--param,-p", c.params, "parameter binding name=value (repeatable)");
    cmd->add_flag("--json", c.json, "emit a JSON document");
    cmd->add_option("--seed", c.seed, "random seed");
}

void add_search(CLI::App* cmd, SearchOpts& s) {
    cmd->add_option("--degree,-d", s.degree, "degree bound for g")->check(CLI::PositiveNumber);
    cmd->add_option("--method", s.method, "exact-const or numeric")->check(CLI::IsMember({"exact-const", "numeric"}));
    cmd->add_option("--denom-bound", s.denom_bound, "rationalization denominator bound")->check(CLI::PositiveNumber);
    cmd->add_option("--starts", s.starts, "multi-start count")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", s.threads, "worker threads (0 = all cores)");
    cmd->add_option("--tolerance", s.tolerance, "residual tolerance for candidates")->check(CLI::PositiveNumber);
}

Bindings bindings_of(const std::vector<std::string>& params) {
    Bindings b;
    for (const auto& p : params) add_binding(b, p);
    return b;
}

SearchConfig config_of(const SearchOpts& s, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.degree = s.degree;
    cfg.method = s.method == "exact-const" ? SearchMethod::ExactConstant : SearchMethod::Numeric;
    cfg.denom_bound = s.denom_bound;
    cfg.starts = s.starts;
    cfg.threads = s.threads;
    cfg.tolerance = s.tolerance;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

nlohmann::json params_json(const Bindings& b) {
    auto j = nlohmann::json::object();
    for (const auto& [k, v] : b) j[k] = to_string(v);
    return j;
}

nlohmann::json run_info(const ModelFile& m, const Bindings& b, const SearchConfig& cfg) {
    return {{"model", m.name},
            {"params", params_json(b)},
            {"degree", cfg.degree},
            {"method", cfg.method == SearchMethod::ExactConstant ? "exact-const" : "numeric"},
            {"seed", cfg.seed},
            {"denom_bound", cfg.denom_bound},
            {"starts", cfg.starts}};
}

void print_pairs(std::ostream& out, const std::vector<DarbouxPair>& pairs, const VarNames& names) {
    if (pairs.empty()) out << "no certified Darboux pairs\n";
    for (const auto& p : pairs) {
        out << "g = " << p.g.to_string(names) << "    lambda = " << p.cofactor.to_string(names) << "    "
            << (p.certified ? "certified" : "uncertified");
        if (!p.note.empty()) out << "    [" << p.note << "]";
        out << '\n';
    }
}

struct SearchResult {
    std::vector<DarbouxPair> pairs;
    std::vector<FirstIntegral> integrals;
};

SearchResult search_and_combine(const VectorField& X, const SearchConfig& cfg, bool combine) {
    SearchResult r;
    r.pairs = search(X, cfg);
    if (combine) r.integrals = combine_cofactors(X, drop_reducible(r.pairs));
    return r;
}

void print_integrals(std::ostream& out, const VectorField& X, const std::vector<FirstIntegral>& integrals) {
    if (integrals.empty()) out << "no first integral from these pairs\n";
    for (const auto& I : integrals) {
        const bool ok = certify_integral(X, I).passed();
        out << "I = " << I.to_string(X.names()) << "    " << (ok ? "certified" : "NOT certified") << '\n';
    }
}

nlohmann::json integrals_json(const VectorField& X, const std::vector<FirstIntegral>& integrals) {
    auto arr = nlohmann::json::array();
    for (const auto& I : integrals) {
        auto j = to_json(I, X.names());
        j["status"] = certify_integral(X, I).passed() ? "pass" : "fail";
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<Rational> grid_values(const std::string& spec, std::string& name) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid entry needs name=values: " + spec);
    name = spec.substr(0, eq);
    const std::string rhs = spec.substr(eq + 1);
    std::vector<Rational> vals;
    if (rhs.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(rhs);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw std::invalid_argument("range is lo:hi:step: " + rhs);
        const Rational lo = parse_constant(parts[0]), hi = parse_constant(parts[1]), step = parse_constant(parts[2]);
        if (step <= 0) throw std::invalid_argument("grid step must be positive");
        for (Rational v = lo; v <= hi; v += step) vals.push_back(v);
    } else {
        std::stringstream ss(rhs);
        for (std::string p; std::getline(ss, p, ',');) vals.push_back(parse_constant(p));
    }
    if (vals.empty()) throw std::invalid_argument("empty grid for " + name);
    return vals;
}

State parse_state(const std::string& text) {
    State s{};
    std::stringstream ss(text);
    std::string p;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, p, ',')) throw std::invalid_argument("--x0 needs three comma-separated values");
        s[i] = to_double(parse_constant(p));
    }
    if (std::getline(ss, p, ',')) throw std::invalid_argument("--x0 needs exactly three values");
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polyflow: Darboux polynomials, first integrals and structure checks for 3D polynomial flows", "polyflow"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "polyflow 0.1.0");

    Common common;
    SearchOpts sopts;

    auto* darboux = app.add_subcommand("darboux", "search for Darboux polynomials");
    add_common(darboux, common);
    add_search(darboux, sopts);

    auto* integrals = app.add_subcommand("integrals", "search, then combine cofactors into first integrals");
    add_common(integrals, common);
    add_search(integrals, sopts);

    std::vector<std::string> claims, integral_names;
    bool all = false;
    auto* verify = app.add_subcommand("verify", "check claims and integrals declared in the model");
    add_common(verify, common);
    verify->add_option("--claim", claims, "claim name (repeatable)");
    verify->add_option("--integral", integral_names, "integral name (repeatable)");
    verify->add_flag("--all", all, "every claim and integral in the model");

    std::vector<std::string> grid;
    auto* scan = app.add_subcommand("scan", "rerun the search over a rational parameter grid");
    add_common(scan, common);
    add_search(scan, sopts);
    scan->add_option("--grid", grid, "name=lo:hi:step or name=v1,v2,... (repeatable)")->required();

    std::string x0_text, csv_path, sim_integral;
    double t0 = 0, t1 = 1, dt = 1e-3;
    std::size_t every = 1;
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory with fixed-step RK4");
    add_common(simulate, common);
    simulate->add_option("--x0", x0_text, "initial state a,b,c")->required();
    simulate->add_option("--t0", t0, "start time");
    simulate->add_option("--t1", t1, "end time")->required();
    simulate->add_option("--dt", dt, "step size")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--integral", sim_integral, "report drift of this integral");
    simulate->add_option("--csv", csv_path, "write the trajectory as CSV here (default: stdout unless --json)");
    simulate->add_option("--every", every, "write every N-th step")->check(CLI::PositiveNumber);

    std::string corpus;
    bool run_cases = false;
    auto* cases = app.add_subcommand("cases", "list (or run) the corpus cases");
    cases->add_option("--corpus", corpus, "corpus directory");
    cases->add_flag("--run", run_cases, "run every case and report");
    cases->add_flag("--json", common.json, "emit a JSON document");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << "polyflow 0.1.0\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        for (auto* sub : app.get_subcommands()) {
            err << sub->help();
            return kUsage;
        }
        err << app.help();
        return kUsage;
    }

    try {
        if (*cases) {
            const auto dir = corpus.empty() ? corpus_dir() : std::filesystem::path(corpus);
            const auto list = list_cases(dir);
            auto arr = nlohmann::json::array();
            bool ok = true;
            for (const auto& c : list) {
                nlohmann::json j{{"id", c.id}, {"model", c.model.filename().string()}, {"params", params_json(c.bindings)}};
                if (run_cases) {
                    const auto o = run_case(c);
                    ok = ok && o.passed();
                    j["status"] = o.passed() ? "pass" : "fail";
                    j["failures"] = o.failures;
                    if (!common.json) {
                        out << (o.passed() ? "PASS " : "FAIL ") << c.id << '\n';
                        for (const auto& f : o.failures) out << "    " << f << '\n';
                    }
                } else if (!common.json) {
                    out << c.id << "    " << c.model.filename().string() << '\n';
                }
                arr.push_back(std::move(j));
            }
            if (common.json) out << nlohmann::json{{"cases", arr}}.dump(2) << '\n';
            return ok ? kOk : kClaimFailed;
        }

        const ModelFile m = load_model(common.model);
        const Bindings given = bindings_of(common.params);

        if (*darboux || *integrals) {
            const SearchConfig cfg = config_of(sopts, common.seed);
            const VectorField X = bind_field(m, given);
            const auto r = search_and_combine(X, cfg, integrals->parsed());
            if (common.json) {
                auto j = run_info(m, given, cfg);
                j["pairs"] = to_json(r.pairs, X.names());
                if (integrals->parsed()) j["integrals"] = integrals_json(X, r.integrals);
                out << j.dump(2) << '\n';
            } else {
                out << "field: " << X.components().to_string(X.names()) << '\n';
                print_pairs(out, r.pairs, X.names());
                if (integrals->parsed()) print_integrals(out, X, r.integrals);
            }
            return kOk;
        }

        if (*scan) {
            const SearchConfig cfg = config_of(sopts, common.seed);
            std::vector<std::pair<std::string, std::vector<Rational>>> axes;
            for (const auto& g : grid) {
                std::string name;
                auto vals = grid_values(g, name);
                axes.emplace_back(name, std::move(vals));
            }
            auto arr = nlohmann::json::array();
            std::vector<std::size_t> idx(axes.size(), 0);
            while (true) {
                Bindings b = given;
                for (std::size_t i = 0; i < axes.size(); ++i) b[axes[i].first] = axes[i].second[idx[i]];
                const VectorField X = bind_field(m, b);
                const auto r = search_and_combine(X, cfg, true);
                if (common.json) {
                    arr.push_back({{"params", params_json(b)},
                                   {"pairs", to_json(r.pairs, X.names())},
                                   {"integrals", integrals_json(X, r.integrals)}});
                } else {
                    out << "--";
                    for (const auto& [k, v] : b) out << ' ' << k << '=' << to_string(v);
                    out << '\n';
                    if (r.pairs.empty())
                        out << "nothing found up to degree " << cfg.degree << ", denominator bound " << cfg.denom_bound
                            << '\n';
                    else
                        print_pairs(out, r.pairs, X.names());
                    if (!r.pairs.empty()) print_integrals(out, X, r.integrals);
                }
                std::size_t k = 0;
                while (k < axes.size() && ++idx[k] == axes[k].second.size()) idx[k++] = 0;
                if (k == axes.size()) break;
            }
            if (common.json) {
                auto j = run_info(m, given, cfg);
                j["grid"] = arr;
                out << j.dump(2) << '\n';
            }
            return kOk;
        }

        if (*verify) {
            if (all) {
                for (const auto& c : m.claims) claims.push_back(c.name);
                for (const auto& i : m.integrals) integral_names.push_back(i.name);
            }
            if (claims.empty() && integral_names.empty()) {
                err << "error: verify needs --claim, --integral or --all\n";
                return kUsage;
            }
            bool ok = true;
            auto arr = nlohmann::json::array();
            for (const auto& name : claims) {
                const auto* decl = m.find_claim(name);
                if (!decl) throw std::invalid_argument("model has no claim '" + name + "'");
                const auto bound = bind_claim(m, *decl, given);
                const Report r = verify_claim(bound, common.seed);
                ok = ok && r.passed();
                if (common.json) {
                    auto j = r.to_json();
                    j["claim"] = name;
                    j["params"] = params_json(bound.bindings);
                    arr.push_back(std::move(j));
                } else {
                    out << "claim " << name << " (" << bound.kind << "): " << (r.passed() ? "PASS" : "FAIL") << '\n'
                        << r.to_text();
                }
            }
            for (const auto& name : integral_names) {
                const auto* decl = m.find_integral(name);
                if (!decl) throw std::invalid_argument("model has no integral '" + name + "'");
                const auto bound = bind_integral(m, *decl, given);
                const Report r = verify_integral(bound);
                ok = ok && r.passed();
                if (common.json) {
                    auto j = r.to_json();
                    j["integral"] = name;
                    j["params"] = params_json(bound.bindings);
                    arr.push_back(std::move(j));
                } else {
                    out << "integral " << name << " I = " << bound.integral.to_string(bound.field.names()) << ": "
                        << (r.passed() ? "PASS" : "FAIL") << '\n'
                        << r.to_text();
                }
            }
            if (common.json) out << nlohmann::json{{"status", ok ? "pass" : "fail"}, {"reports", arr}}.dump(2) << '\n';
            return ok ? kOk : kClaimFailed;
        }

        if (*simulate) {
            const State x0 = parse_state(x0_text);
            std::optional<BoundIntegral> bound;
            if (!sim_integral.empty()) {
                const auto* decl = m.find_integral(sim_integral);
                if (!decl) throw std::invalid_argument("model has no integral '" + sim_integral + "'");
                bound = bind_integral(m, *decl, given);
            }
            const VectorField X = bound ? bound->field : bind_field(m, given);
            const Trajectory tr = integrate(X, x0, t0, t1, dt);

            auto write_csv = [&](std::ostream& os) {
                os << "t," << X.names()[0] << ',' << X.names()[1] << ',' << X.names()[2] << '\n';
                os << std::setprecision(17);
                for (std::size_t k = 0; k < tr.times.size(); ++k) {
                    if (k % every != 0 && k + 1 != tr.times.size()) continue;
                    const auto& s = tr.states[k];
                    os << tr.times[k] << ',' << s[0] << ',' << s[1] << ',' << s[2] << '\n';
                }
            };
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw std::runtime_error("cannot write " + csv_path);
                write_csv(f);
            } else if (!common.json) {
                write_csv(out);
            }

            nlohmann::json j{{"steps", tr.times.size() - 1},
                             {"step", tr.step},
                             {"order", tr.order},
                             {"final_time", tr.times.back()},
                             {"final_state", tr.states.back()},
                             {"error_estimate", tr.error_estimate},
                             {"truncated", tr.truncated}};
            if (tr.truncated) j["truncation_reason"] = tr.truncation_reason;
            if (bound) {
                const auto d = drift(bound->integral, tr);
                j["integral"] = {{"name", sim_integral},
                                 {"I", bound->integral.to_string(X.names())},
                                 {"defined", d.defined},
                                 {"initial_value", d.initial_value},
                                 {"max_relative_drift", d.max_relative_drift},
                                 {"skipped", d.skipped}};
            }
            if (common.json) out << j.dump(2) << '\n';
            else if (!csv_path.empty() || bound) err << j.dump(2) << '\n';
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace polyflow::cli
