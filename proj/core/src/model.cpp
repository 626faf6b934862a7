#include "polyflow/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace polyflow {

namespace {

using Kind = ParseError::Kind;

struct Located {
    std::string text;
    int line = 0;
    int column = 0;
};

struct Entry {
    Located key;
    Located value;
};

struct RawSection {
    std::string kind;
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
};

[[noreturn]] void model_error(const std::string& msg, int line, int column = 1) {
    throw ParseError(Kind::Model, msg, line, column);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Trims `text` starting at `column` and returns the trimmed piece with its column.
Located trimmed(std::string_view text, int line, int column) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    return {std::string(text.substr(b, e - b)), line, column + static_cast<int>(b)};
}

std::vector<Located> split(const Located& v, char sep) {
    std::vector<Located> out;
    std::size_t start = 0;
    const std::string_view s = v.text;
    while (true) {
        const auto pos = s.find(sep, start);
        const auto piece = s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        out.push_back(trimmed(piece, v.line, v.column + static_cast<int>(start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<RawSection> read_sections(std::string_view text) {
    std::vector<RawSection> out;
    std::set<std::pair<std::string, std::string>> seen;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const Located l = trimmed(raw, line, 1);
        if (l.text.empty()) continue;
        if (l.text.front() == '[') {
            if (l.text.back() != ']') model_error("unterminated section header", line, l.column);
            const Located inner = trimmed(std::string_view(l.text).substr(1, l.text.size() - 2), line, l.column + 1);
            const auto sp = inner.text.find_first_of(" \t");
            RawSection sec;
            sec.kind = inner.text.substr(0, sp);
            sec.name = sp == std::string::npos ? "" : trimmed(std::string_view(inner.text).substr(sp), line, 1).text;
            sec.line = line;
            const bool named = sec.kind == "claim" || sec.kind == "integral";
            const bool plain = sec.kind == "model" || sec.kind == "field" || sec.kind == "transform";
            if (!named && !plain) model_error("unknown section [" + sec.kind + "]", line, inner.column);
            if (named && sec.name.empty()) model_error("section [" + sec.kind + "] needs a name", line, inner.column);
            if (plain && !sec.name.empty()) model_error("section [" + sec.kind + "] takes no name", line, inner.column);
            if (!seen.emplace(sec.kind, sec.name).second)
                model_error("duplicate section [" + inner.text + "]", line, l.column);
            out.push_back(std::move(sec));
            continue;
        }
        if (out.empty()) model_error("entry outside of any section", line, l.column);
        const auto eq = l.text.find('=');
        if (eq == std::string::npos) model_error("expected 'key = value'", line, l.column);
        Entry e;
        e.key = trimmed(std::string_view(l.text).substr(0, eq), line, l.column);
        e.value = trimmed(std::string_view(l.text).substr(eq + 1), line, l.column + static_cast<int>(eq) + 1);
        if (e.key.text.empty()) model_error("empty key", line, l.column);
        if (e.value.text.empty()) model_error("empty value for '" + e.key.text + "'", line, e.value.column);
        out.back().entries.push_back(std::move(e));
    }
    return out;
}

/// Single-valued keys of a section; repeated keys are rejected unless listed.
std::map<std::string, Located> keyed(const RawSection& sec, const std::set<std::string>& allowed,
                                     const std::set<std::string>& repeatable = {}) {
    std::map<std::string, Located> out;
    for (const auto& e : sec.entries) {
        if (!allowed.count(e.key.text) && !repeatable.count(e.key.text))
            model_error("unknown key '" + e.key.text + "' in [" + sec.kind + "]", e.key.line, e.key.column);
        if (repeatable.count(e.key.text)) continue;
        if (!out.emplace(e.key.text, e.value).second)
            model_error("duplicate key '" + e.key.text + "'", e.key.line, e.key.column);
    }
    return out;
}

std::vector<std::string> name_list(const Located& v) {
    std::vector<std::string> out;
    for (const auto& piece : split(v, ',')) {
        if (!is_identifier(piece.text)) model_error("invalid name '" + piece.text + "'", piece.line, piece.column);
        if (piece.text == "t" || piece.text == "exp")
            model_error("'" + piece.text + "' is reserved", piece.line, piece.column);
        if (std::find(out.begin(), out.end(), piece.text) != out.end())
            model_error("duplicate name '" + piece.text + "'", piece.line, piece.column);
        out.push_back(piece.text);
    }
    return out;
}

VarNames three_names(const Located& v) {
    const auto names = name_list(v);
    if (names.size() != 3) model_error("exactly three variables are required", v.line, v.column);
    return {names[0], names[1], names[2]};
}

int integer_value(const Located& v) {
    try {
        std::size_t used = 0;
        const int k = std::stoi(v.text, &used);
        if (used == v.text.size()) return k;
    } catch (const std::exception&) {
    }
    model_error("expected an integer, got '" + v.text + "'", v.line, v.column);
}

Expr expr(const Located& v, const Declarations& decl) { return parse_ast(v.text, decl, v.line, v.column); }

TransformDecl parse_transform(const std::map<std::string, Located>& keys, const VarNames& fallback, int line) {
    TransformDecl t;
    t.variables = fallback;
    const auto sc = keys.find("scale");
    if (sc == keys.end()) model_error("transform needs 'scale'", line);
    const auto parts = split(sc->second, ',');
    if (parts.size() != 3) model_error("scale needs three integers", sc->second.line, sc->second.column);
    for (int i = 0; i < 3; ++i) t.scaling.a[i] = integer_value(parts[i]);
    if (const auto c = keys.find("clock"); c != keys.end()) t.scaling.clock = integer_value(c->second);
    if (const auto v = keys.find("variables"); v != keys.end()) t.variables = three_names(v->second);
    return t;
}

std::vector<std::pair<std::string, Expr>> parse_params(const Located& v, const Declarations& decl) {
    std::vector<std::pair<std::string, Expr>> out;
    for (const auto& piece : split(v, ',')) {
        const auto eq = piece.text.find('=');
        if (eq == std::string::npos) model_error("expected 'name = value'", piece.line, piece.column);
        const Located name = trimmed(std::string_view(piece.text).substr(0, eq), piece.line, piece.column);
        const Located value =
            trimmed(std::string_view(piece.text).substr(eq + 1), piece.line, piece.column + static_cast<int>(eq) + 1);
        if (std::find(decl.parameters.begin(), decl.parameters.end(), name.text) == decl.parameters.end())
            throw ParseError(Kind::UnknownIdentifier, "unknown parameter '" + name.text + "'", name.line, name.column);
        for (const auto& [n, e] : out)
            if (n == name.text) model_error("parameter '" + n + "' pinned twice", name.line, name.column);
        out.emplace_back(name.text, parse_ast(value.text, Declarations{}, value.line, value.column));
    }
    return out;
}

const std::set<std::string> kClaimKinds = {"darboux",     "poisson-vector",  "hamiltonian",    "nambu",
                                           "last-multiplier", "metriplectic-1", "metriplectic-2"};

ClaimDecl parse_claim(const RawSection& sec, const ModelFile& m) {
    const auto keys = keyed(sec, {"kind", "params", "transform", "scale", "clock", "variables", "g", "cofactor", "J",
                                  "H", "H1", "H2", "M", "G", "S", "lambda"});
    ClaimDecl c;
    c.name = sec.name;
    c.line = sec.line;
    const auto kind = keys.find("kind");
    if (kind == keys.end()) model_error("claim '" + c.name + "' needs 'kind'", sec.line);
    c.kind = kind->second.text;
    if (!kClaimKinds.count(c.kind)) model_error("unknown claim kind '" + c.kind + "'", kind->second.line, kind->second.column);

    const bool own = keys.count("scale") || keys.count("clock") || keys.count("variables");
    if (const auto t = keys.find("transform"); t != keys.end()) {
        if (t->second.text != "none") model_error("transform may only be 'none'", t->second.line, t->second.column);
        if (own) model_error("transform = none conflicts with scale/clock/variables", t->second.line, t->second.column);
    } else if (own) {
        c.transform = parse_transform(keys, m.decl.variables, sec.line);
    } else {
        c.transform = m.transform;
    }
    const Declarations decl{c.transform ? c.transform->variables : m.decl.variables, m.decl.parameters};

    if (const auto p = keys.find("params"); p != keys.end()) c.params = parse_params(p->second, m.decl);
    for (const char* k : {"g", "cofactor", "H1", "H2", "M", "lambda"})
        if (const auto it = keys.find(k); it != keys.end()) c.scalars[k] = expr(it->second, decl);
    if (const auto it = keys.find("H"); it != keys.end()) {
        if (keys.count("H1")) model_error("use either H or H1", it->second.line, it->second.column);
        c.scalars["H1"] = expr(it->second, decl);
    }
    if (const auto it = keys.find("J"); it != keys.end()) {
        const auto parts = split(it->second, ',');
        if (parts.size() != 3) model_error("J needs three components", it->second.line, it->second.column);
        c.J = std::array<Expr, 3>{expr(parts[0], decl), expr(parts[1], decl), expr(parts[2], decl)};
    }
    if (const auto it = keys.find("G"); it != keys.end()) {
        const auto rows = split(it->second, ';');
        if (rows.size() != 3) model_error("G needs three rows separated by ';'", it->second.line, it->second.column);
        std::array<std::array<Expr, 3>, 3> g;
        for (int i = 0; i < 3; ++i) {
            const auto cells = split(rows[i], ',');
            if (cells.size() != 3) model_error("each row of G needs three entries", rows[i].line, rows[i].column);
            for (int j = 0; j < 3; ++j) g[i][j] = expr(cells[j], decl);
        }
        c.G = g;
    }
    if (const auto it = keys.find("S"); it != keys.end()) {
        if (it->second.text == "H1") c.entropy = Generator::H1;
        else if (it->second.text == "H2") c.entropy = Generator::H2;
        else model_error("S must be H1 or H2", it->second.line, it->second.column);
    }

    auto require = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) {
            const bool present = std::string(n) == "J" ? c.J.has_value()
                                 : std::string(n) == "G" ? c.G.has_value()
                                                         : c.scalars.count(n) > 0;
            if (!present) model_error("claim '" + c.name + "' of kind " + c.kind + " needs '" + n + "'", sec.line);
        }
    };
    if (c.kind == "darboux") require({"g", "cofactor"});
    else if (c.kind == "poisson-vector") require({"J"});
    else if (c.kind == "hamiltonian") require({"J", "H1"});
    else if (c.kind == "nambu") require({"H1", "H2"});
    else if (c.kind == "last-multiplier") require({"M"});
    else {
        require({"G"});
        if (!c.J) require({"H1", "H2"});
    }
    return c;
}

IntegralDecl parse_integral(const RawSection& sec, const ModelFile& m) {
    const auto keys = keyed(sec, {"rate", "params"}, {"factor"});
    IntegralDecl in;
    in.name = sec.name;
    in.line = sec.line;
    const auto rate = keys.find("rate");
    in.rate = rate == keys.end() ? parse_ast("0", m.decl) : expr(rate->second, m.decl);
    if (const auto p = keys.find("params"); p != keys.end()) in.params = parse_params(p->second, m.decl);
    for (const auto& e : sec.entries) {
        if (e.key.text != "factor") continue;
        const auto parts = split(e.value, ';');
        if (parts.size() > 2) model_error("factor is 'g ; n'", e.value.line, e.value.column);
        Expr n = parts.size() == 2 ? expr(parts[1], m.decl) : parse_ast("1", m.decl);
        in.factors.emplace_back(expr(parts[0], m.decl), std::move(n));
    }
    if (in.factors.empty()) model_error("integral '" + in.name + "' has no factor", sec.line);
    return in;
}

}  // namespace

const ClaimDecl* ModelFile::find_claim(std::string_view n) const {
    for (const auto& c : claims)
        if (c.name == n) return &c;
    return nullptr;
}

const IntegralDecl* ModelFile::find_integral(std::string_view n) const {
    for (const auto& i : integrals)
        if (i.name == n) return &i;
    return nullptr;
}

ModelFile parse_model(std::string_view text) {
    const auto sections = read_sections(text);
    ModelFile m;
    const RawSection* model = nullptr;
    const RawSection* field = nullptr;
    const RawSection* transform = nullptr;
    for (const auto& s : sections) {
        if (s.kind == "model") model = &s;
        if (s.kind == "field") field = &s;
        if (s.kind == "transform") transform = &s;
    }
    if (!model) model_error("missing [model] section", 1);
    if (!field) model_error("missing [field] section", 1);

    const auto mk = keyed(*model, {"name", "variables", "parameters", "description"});
    const auto name = mk.find("name");
    if (name == mk.end()) model_error("[model] needs 'name'", model->line);
    m.name = name->second.text;
    if (const auto d = mk.find("description"); d != mk.end()) m.description = d->second.text;
    if (const auto v = mk.find("variables"); v != mk.end()) m.decl.variables = three_names(v->second);
    if (const auto p = mk.find("parameters"); p != mk.end()) {
        m.decl.parameters = name_list(p->second);
        for (const auto& pn : m.decl.parameters)
            if (std::find(m.decl.variables.begin(), m.decl.variables.end(), pn) != m.decl.variables.end())
                model_error("'" + pn + "' is both a variable and a parameter", p->second.line, p->second.column);
    }

    std::array<bool, 3> have{};
    for (const auto& e : field->entries) {
        const std::string& k = e.key.text;
        if (k.size() < 2 || k.back() != '\'')
            model_error("field entries look like \"x' = ...\"", e.key.line, e.key.column);
        const std::string var = k.substr(0, k.size() - 1);
        const auto it = std::find(m.decl.variables.begin(), m.decl.variables.end(), var);
        if (it == m.decl.variables.end())
            throw ParseError(Kind::UnknownIdentifier, "unknown variable '" + var + "'", e.key.line, e.key.column);
        const auto i = static_cast<std::size_t>(it - m.decl.variables.begin());
        if (have[i]) model_error("duplicate component '" + k + "'", e.key.line, e.key.column);
        have[i] = true;
        m.field[i] = expr(e.value, m.decl);
        m.field_text[i] = e.value.text;
    }
    for (std::size_t i = 0; i < 3; ++i)
        if (!have[i]) model_error("missing component " + m.decl.variables[i] + "'", field->line);

    if (transform) {
        const auto tk = keyed(*transform, {"scale", "clock", "variables"});
        m.transform = parse_transform(tk, m.decl.variables, transform->line);
    }
    for (const auto& s : sections) {
        if (s.kind == "claim") m.claims.push_back(parse_claim(s, m));
        if (s.kind == "integral") m.integrals.push_back(parse_integral(s, m));
    }
    return m;
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_model(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), path.string() + ":" + e.what(), e.line(), e.column());
    }
}

void add_binding(Bindings& bindings, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ParseError(Kind::Syntax, "expected name=value", 1, 1);
    const Located name = trimmed(assignment.substr(0, eq), 1, 1);
    if (!is_identifier(name.text)) throw ParseError(Kind::Syntax, "invalid parameter name '" + name.text + "'", 1, 1);
    const Rational v = parse_constant(assignment.substr(eq + 1), Declarations{}, {});
    bindings[name.text] = v;
}

namespace {

Bindings merge(const ModelFile& m, const std::vector<std::pair<std::string, Expr>>& pinned, const Bindings& given) {
    for (const auto& [name, value] : given)
        if (std::find(m.decl.parameters.begin(), m.decl.parameters.end(), name) == m.decl.parameters.end())
            model_error("model '" + m.name + "' has no parameter '" + name + "'", 1);
    Bindings out = given;
    for (const auto& [name, e] : pinned) {
        const Rational v = evaluate_constant(e, {});
        const auto it = out.find(name);
        if (it != out.end() && it->second != v)
            model_error("parameter '" + name + "' is pinned to " + to_string(v) + " but given " + to_string(it->second),
                        e.line(), e.column());
        out[name] = v;
    }
    return out;
}

}  // namespace

VectorField bind_field(const ModelFile& m, const Bindings& bindings) {
    for (const auto& [name, value] : bindings)
        if (std::find(m.decl.parameters.begin(), m.decl.parameters.end(), name) == m.decl.parameters.end())
            model_error("model '" + m.name + "' has no parameter '" + name + "'", 1);
    std::vector<std::string> missing;
    for (const auto& p : m.decl.parameters) {
        if (bindings.count(p)) continue;
        for (const auto& e : m.field) {
            const auto refs = referenced_parameters(e);
            if (std::find(refs.begin(), refs.end(), p) != refs.end()) {
                missing.push_back(p);
                break;
            }
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& p : missing) list += (list.empty() ? "" : ", ") + p;
        throw ParseError(Kind::UnboundParameter, "no value for parameter(s) " + list, m.field[0].line(), 1);
    }
    PolyVector f{evaluate_polynomial(m.field[0], bindings), evaluate_polynomial(m.field[1], bindings),
                 evaluate_polynomial(m.field[2], bindings)};
    std::map<std::string, Rational> used;
    for (const auto& e : m.field)
        for (const auto& p : referenced_parameters(e)) used[p] = bindings.at(p);
    return VectorField(std::move(f), m.name, std::move(used), 0, m.decl.variables);
}

BoundClaim bind_claim(const ModelFile& m, const ClaimDecl& c, const Bindings& given) {
    const Bindings b = merge(m, c.params, given);
    VectorField field = bind_field(m, b);
    std::optional<ExpScaling> scaling;
    if (c.transform) {
        scaling = c.transform->scaling;
        field = transform(field, c.transform->scaling, c.transform->variables, m.name + "/" + c.name);
    }
    BoundClaim out{c.name, c.kind, b, field, scaling, std::nullopt, std::nullopt};
    auto poly = [&](const char* k) { return evaluate_polynomial(c.scalars.at(k), b); };
    if (c.kind == "darboux") {
        DarbouxPair p;
        p.g = poly("g");
        p.cofactor = poly("cofactor");
        out.darboux = p;
        return out;
    }
    StructureSpec spec;
    spec.kind = parse_claim_kind(c.kind);
    if (c.J) spec.J = PolyVector{evaluate_polynomial((*c.J)[0], b), evaluate_polynomial((*c.J)[1], b),
                                 evaluate_polynomial((*c.J)[2], b)};
    if (c.scalars.count("H1")) spec.H1 = poly("H1");
    if (c.scalars.count("H2")) spec.H2 = poly("H2");
    if (c.scalars.count("M")) spec.M = evaluate(c.scalars.at("M"), b);
    if (c.scalars.count("lambda")) spec.lambda = evaluate_constant(c.scalars.at("lambda"), b);
    if (c.G) {
        RatioMatrix g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] = evaluate((*c.G)[i][j], b);
        spec.G = g;
    }
    spec.entropy = c.entropy;
    spec.validate();
    out.structure = spec;
    return out;
}

BoundIntegral bind_integral(const ModelFile& m, const IntegralDecl& in, const Bindings& given) {
    const Bindings b = merge(m, in.params, given);
    FirstIntegral I;
    I.rate = evaluate_constant(in.rate, b);
    for (const auto& [g, n] : in.factors) I.factors.push_back({evaluate_polynomial(g, b), evaluate_constant(n, b)});
    return {in.name, b, bind_field(m, b), std::move(I)};
}

Report verify_claim(const BoundClaim& c, std::uint64_t seed) {
    Report r = c.darboux ? verify_darboux(c.field, *c.darboux) : check_structure(c.field, *c.structure, seed);
    r.subject = c.field.name() + " " + c.name;
    r.names = c.field.names();
    return r;
}

Report verify_integral(const BoundIntegral& in) {
    Report r = certify_integral(in.field, in.integral);
    r.names = in.field.names();
    return r;
}

}  // namespace polyflow
