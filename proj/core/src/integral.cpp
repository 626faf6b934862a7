#include "polyflow/integral.hpp"

#include "polyflow/linalg.hpp"

#include <cmath>
#include <set>

namespace polyflow {

std::string FirstIntegral::to_string(const VarNames& names) const {
    std::string out;
    if (rate != 0) {
        const Rational k = -rate;
        out = k == 1 ? "exp(t)" : k == -1 ? "exp(-t)" : "exp(" + polyflow::to_string(k) + "*t)";
    }
    for (const auto& f : factors) {
        if (!out.empty()) out += "*";
        out += "(" + f.g.to_string(names) + ")";
        if (f.exponent != 1) out += "^(" + polyflow::to_string(f.exponent) + ")";
    }
    return out.empty() ? "1" : out;
}

namespace {

QVector primitive_integer(QVector v) {
    mpz_class l = 1;
    for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_class g = 0;
    for (auto& c : v) {
        c *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale = g == 0 ? Rational(1) : Rational(1, 1) / Rational(g);
    for (const auto& c : v)
        if (c != 0) {
            if (c < 0) scale = -scale;
            break;
        }
    for (auto& c : v) c *= scale;
    return v;
}

}  // namespace

std::vector<FirstIntegral> combine_cofactors(const std::vector<DarbouxPair>& pairs) {
    for (const auto& p : pairs)
        if (!p.certified) throw std::invalid_argument("combine_cofactors: uncertified pair " + p.g.to_string());
    if (pairs.empty()) return {};

    // Rows: monomials of the non-constant cofactor parts; columns: pairs.
    std::set<Monomial, std::greater<>> monos;
    for (const auto& p : pairs)
        for (const auto& [m, c] : p.cofactor.terms())
            if (!(m == Monomial{})) monos.insert(m);
    std::vector<Monomial> rows(monos.begin(), monos.end());
    QMatrix a(rows.size(), pairs.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < pairs.size(); ++c) a(r, c) = pairs[c].cofactor.coefficient(rows[r]);

    std::vector<QVector> basis;
    if (rows.empty()) {
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            QVector e(pairs.size(), Rational(0));
            e[c] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = a.nullspace();
    }

    std::vector<FirstIntegral> out;
    for (const auto& raw : basis) {
        const QVector n = primitive_integer(raw);
        FirstIntegral fi;
        fi.rate = 0;
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            if (n[c] == 0) continue;
            fi.rate += n[c] * pairs[c].cofactor.coefficient(Monomial{});
            fi.factors.push_back({pairs[c].g, n[c]});
            fi.provenance.push_back(pairs[c]);
        }
        out.push_back(std::move(fi));
    }
    return out;
}

std::vector<FirstIntegral> combine_cofactors(const VectorField& X, const std::vector<DarbouxPair>& pairs) {
    for (const auto& p : pairs)
        if (!verify_darboux(X, p).passed())
            throw std::invalid_argument("combine_cofactors: pair (" + p.g.to_string() + ") is not Darboux for " +
                                        X.name());
    return combine_cofactors(pairs);
}

Report certify_integral(const VectorField& X, const FirstIntegral& integral) {
    Report rep;
    rep.subject = "first integral " + integral.to_string(X.names()) + " of " + X.name();
    rep.names = X.names();
    Polynomial sum = -Polynomial(integral.rate);
    bool all_exact = true;
    auto cofactors = nlohmann::json::array();
    for (const auto& f : integral.factors) {
        const Polynomial xg = apply_derivation(X, f.g);
        std::optional<Polynomial> q;
        if (!f.g.is_zero() && f.g.is_s_free()) q = xg.divide_exact(f.g);
        if (!q) {
            all_exact = false;
            rep.identities.push_back({"X(g) divisible by g for g = " + f.g.to_string(X.names()),
                                      {xg},
                                      {},
                                      false,
                                      "g is not a Darboux polynomial of this field"});
            continue;
        }
        cofactors.push_back({{"g", f.g.to_string(X.names())}, {"lambda", q->to_string(X.names())}});
        sum += f.exponent * *q;
    }
    if (all_exact) rep.identities.push_back({"sum n*lambda - r", {sum}, {}, false, ""});
    rep.witness = {{"rate", to_string(integral.rate)}, {"cofactors", cofactors}};
    return rep;
}

double evaluate(const FirstIntegral& integral, double t, double x, double y, double z) {
    double value = std::exp(-integral.rate.get_d() * t);
    const std::array<double, 4> pt{x, y, z, std::exp(t)};
    for (const auto& f : integral.factors) {
        const double g = f.g.eval(pt);
        if (is_integer(f.exponent)) {
            const long n = f.exponent.get_num().get_si();
            if (g == 0.0 && n < 0) throw DomainError("negative power of a vanishing factor");
            value *= std::pow(g, static_cast<double>(n));
        } else {
            if (g == 0.0) throw DomainError("fractional power of a vanishing factor");
            value *= std::copysign(std::pow(std::abs(g), f.exponent.get_d()), g);
        }
    }
    return value;
}

nlohmann::json to_json(const FirstIntegral& integral, const VarNames& names) {
    auto factors = nlohmann::json::array();
    for (const auto& f : integral.factors)
        factors.push_back({{"g", f.g.to_string(names)}, {"n", to_string(f.exponent)}});
    return {{"integral", integral.to_string(names)}, {"rate", to_string(integral.rate)}, {"factors", factors}};
}

}  // namespace polyflow
