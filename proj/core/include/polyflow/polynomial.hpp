#pragma once

#include "polyflow/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace polyflow {

/// Polynomial variables. S is the clock symbol standing for e^t.
enum class Var : std::uint8_t { X = 0, Y = 1, Z = 2, S = 3 };

/// Display names for the three spatial slots. The clock always renders as exp(k*t).
using VarNames = std::array<std::string, 3>;
inline const VarNames kDefaultNames{"x", "y", "z"};

/// x^ex y^ey z^ez s^es; spatial exponents are non-negative, es may be negative.
///
/// Ordering is graded-lex on the spatial part (x > y > z); among monomials with
/// equal spatial part the one with the smaller s-exponent is the greater, so a
/// descending listing shows s-powers in ascending order.
struct Monomial {
    std::array<int, 4> exp{0, 0, 0, 0};

    constexpr Monomial() = default;
    constexpr Monomial(int ex, int ey, int ez, int es = 0) : exp{ex, ey, ez, es} {}

    [[nodiscard]] constexpr int operator[](Var v) const { return exp[static_cast<int>(v)]; }
    [[nodiscard]] constexpr int degree() const { return exp[0] + exp[1] + exp[2]; }
    [[nodiscard]] constexpr bool spatially_constant() const { return degree() == 0; }

    friend constexpr Monomial operator*(const Monomial& a, const Monomial& b) {
        return {a.exp[0] + b.exp[0], a.exp[1] + b.exp[1], a.exp[2] + b.exp[2], a.exp[3] + b.exp[3]};
    }
    friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
    friend constexpr std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        for (int i = 0; i < 3; ++i)
            if (auto c = a.exp[i] <=> b.exp[i]; c != 0) return c;
        return b.exp[3] <=> a.exp[3];
    }
};

/// Exact binding of all four variables; s must be positive for a meaningful
/// clock value but eval does not require it.
struct Point {
    Rational x, y, z, s{1};
};

/// Sparse multivariate polynomial over the rationals in x, y, z and s^{±1}.
/// Coefficients entering through the public API are canonicalized.
/// Terms are held in descending monomial order with no zero coefficients.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, std::greater<>>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT: constants promote implicitly
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
    Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT

    static Polynomial variable(Var v);
    static Polynomial term(const Monomial& m, const Rational& c = 1);
    /// s^k, i.e. e^{kt}.
    static Polynomial clock(int k);

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    /// Spatial total degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_s_free() const;
    [[nodiscard]] Rational coefficient(const Monomial& m) const;
    /// Greatest term. Precondition: nonzero.
    [[nodiscard]] std::pair<Monomial, Rational> leading_term() const;
    /// Distinct s-exponents present, ascending.
    [[nodiscard]] std::vector<int> clock_powers() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator-(Polynomial a);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] Polynomial pow(unsigned n) const;
    /// Formal partial derivative; d/ds lowers the s-exponent by one.
    [[nodiscard]] Polynomial diff(Var v) const;
    [[nodiscard]] Rational eval(const Point& pt) const;
    [[nodiscard]] double eval(const std::array<double, 4>& pt) const;

    /// Quotient when this is an exact multiple of `d`, nullopt otherwise.
    /// Requires an s-free nonzero divisor (std::invalid_argument otherwise).
    [[nodiscard]] std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    /// Scaled so the leading coefficient is 1. Zero stays zero.
    [[nodiscard]] Polynomial monic() const;

    /// Applies f to every monomial (coefficients kept, collisions summed).
    [[nodiscard]] Polynomial map_monomials(const std::function<Monomial(const Monomial&)>& f) const;

    [[nodiscard]] std::string to_string(const VarNames& names = kDefaultNames) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

/// Canonical textual total order used for deterministic sorting.
bool canonical_less(const Polynomial& a, const Polynomial& b);

}  // namespace polyflow
