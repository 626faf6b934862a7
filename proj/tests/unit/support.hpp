#pragma once

#include "polyflow/corpus.hpp"
#include "polyflow/model.hpp"
#include "polyflow/parser.hpp"
#include "polyflow/polynomial.hpp"

#include <random>
#include <string_view>

namespace test {

using namespace polyflow;

inline Polynomial P(std::string_view src, const VarNames& names = kDefaultNames) {
    return parse_expression(src, Declarations{names, {}});
}

inline Rational Q(std::string_view src) { return parse_rational(src); }

inline PolyVector V(std::string_view a, std::string_view b, std::string_view c,
                    const VarNames& names = kDefaultNames) {
    return {P(a, names), P(b, names), P(c, names)};
}

inline VectorField field(std::string_view a, std::string_view b, std::string_view c,
                         const VarNames& names = kDefaultNames, int clock_rate = 0) {
    return VectorField(V(a, b, c, names), "test", {}, clock_rate, names);
}

inline VectorField three_wave(const Rational& gamma, const Rational& delta) {
    const auto m = load_model(corpus_dir() / "three_wave.model");
    return bind_field(m, {{"gamma", gamma}, {"delta", delta}});
}

inline ModelFile corpus_model(const std::string& file) { return load_model(corpus_dir() / file); }

/// Random polynomial with small rational coefficients; s-exponents in [-2, 2]
/// unless `autonomous`.
inline Polynomial random_poly(std::mt19937_64& rng, int max_terms = 5, int max_deg = 3, bool autonomous = false) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> e(0, max_deg);
    std::uniform_int_distribution<int> es(-2, 2);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    Polynomial p;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        int ex = e(rng), ey = e(rng), ez = e(rng);
        while (ex + ey + ez > max_deg) {
            if (ex > 0) --ex;
            else if (ey > 0) --ey;
            else --ez;
        }
        const int s = autonomous ? 0 : es(rng);
        const int nn = num(rng);
        const int dd = den(rng);
        p += Polynomial::term(Monomial(ex, ey, ez, s), Rational(nn, dd));
    }
    return p;
}

inline Point random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-7, 7);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> spos(1, 4);
    Point pt;
    pt.x = Rational(num(rng), den(rng));
    pt.y = Rational(num(rng), den(rng));
    pt.z = Rational(num(rng), den(rng));
    pt.s = Rational(spos(rng), den(rng));
    pt.x.canonicalize();
    pt.y.canonicalize();
    pt.z.canonicalize();
    pt.s.canonicalize();
    return pt;
}

}  // namespace test
