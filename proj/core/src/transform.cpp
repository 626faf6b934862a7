#include "polyflow/transform.hpp"

#include <set>
#include <stdexcept>

namespace polyflow {

Polynomial pullback(const Polynomial& p, const ExpScaling& sc) {
    return p.map_monomials([&](const Monomial& m) {
        Monomial r = m;
        r.exp[3] -= sc.a[0] * m.exp[0] + sc.a[1] * m.exp[1] + sc.a[2] * m.exp[2];
        return r;
    });
}

std::optional<Polynomial> pullback(const FirstIntegral& integral, const ExpScaling& sc) {
    if (!is_integer(integral.rate)) return std::nullopt;
    Polynomial out = Polynomial::clock(-static_cast<int>(integral.rate.get_num().get_si()));
    for (const auto& f : integral.factors) {
        if (!is_integer(f.exponent) || f.exponent < 0) return std::nullopt;
        out = out * pullback(f.g, sc).pow(static_cast<unsigned>(f.exponent.get_num().get_ui()));
    }
    return out;
}

VectorField transform(const VectorField& X, const ExpScaling& sc, const VarNames& names, std::string name) {
    const Polynomial clock_factor = Polynomial::clock(sc.clock);
    PolyVector out;
    for (std::size_t i = 0; i < 3; ++i) {
        const Var v = static_cast<Var>(i);
        Polynomial comp = Polynomial::clock(sc.a[i]) * pullback(X[i], sc);
        if (sc.a[i] != 0) comp += Rational(sc.a[i]) * Polynomial::variable(v) * Polynomial::clock(X.clock_rate());
        out[i] = clock_factor * comp;
    }
    if (name.empty()) name = X.name() + "/transformed";
    return {out, std::move(name), X.params(), X.clock_rate() + sc.clock, names};
}

VectorField inverse_transform(const VectorField& Y, const ExpScaling& sc, const VarNames& names, std::string name) {
    const Polynomial unclock = Polynomial::clock(-sc.clock);
    const VectorField z({unclock * Y[0], unclock * Y[1], unclock * Y[2]}, Y.name(), Y.params(),
                        Y.clock_rate() - sc.clock, Y.names());
    if (name.empty()) name = Y.name() + "/inverse";
    return transform(z, ExpScaling{{-sc.a[0], -sc.a[1], -sc.a[2]}, 0}, names, std::move(name));
}

AutonomyReport autonomy_report(const PolyVector& X) {
    AutonomyReport rep;
    std::set<int> all;
    for (std::size_t i = 0; i < 3; ++i)
        for (int k : X[i].clock_powers())
            if (k != 0) {
                rep.per_component[i].push_back(k);
                all.insert(k);
            }
    rep.surviving_powers.assign(all.begin(), all.end());
    rep.autonomous = all.empty();
    return rep;
}

}  // namespace polyflow
