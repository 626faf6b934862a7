#include "polyflow/polynomial.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace polyflow {

Polynomial::Polynomial(const Rational& c) {
    Rational k = c;
    k.canonicalize();
    add_term(Monomial{}, k);
}

Polynomial Polynomial::variable(Var v) {
    Monomial m;
    m.exp[static_cast<int>(v)] = 1;
    return term(m);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
    for (int i = 0; i < 3; ++i)
        if (m.exp[i] < 0) throw std::invalid_argument("negative spatial exponent");
    Rational k = c;
    k.canonicalize();
    Polynomial p;
    p.add_term(m, k);
    return p;
}

Polynomial Polynomial::clock(int k) { return term(Monomial{0, 0, 0, k}); }

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool Polynomial::is_s_free() const {
    for (const auto& [m, c] : terms_)
        if (m.exp[3] != 0) return false;
    return true;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
    return *terms_.begin();
}

std::vector<int> Polynomial::clock_powers() const {
    std::set<int> ks;
    for (const auto& [m, c] : terms_) ks.insert(m.exp[3]);
    return {ks.begin(), ks.end()};
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& coeff) {
    Rational c = coeff;
    c.canonicalize();
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial operator-(Polynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result(1), base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

Polynomial Polynomial::diff(Var v) const {
    const int i = static_cast<int>(v);
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        if (m.exp[i] == 0) continue;
        Monomial d = m;
        d.exp[i] -= 1;
        r.add_term(d, c * m.exp[i]);
    }
    return r;
}

namespace {

Rational rational_pow(const Rational& base, int k) {
    if (k == 0) return 1;
    if (base == 0) {
        if (k < 0) throw std::domain_error("zero to a negative power");
        return 0;
    }
    unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
    Rational r = k < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

Rational Polynomial::eval(const Point& pt) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        sum += c * rational_pow(pt.x, m.exp[0]) * rational_pow(pt.y, m.exp[1]) *
               rational_pow(pt.z, m.exp[2]) * rational_pow(pt.s, m.exp[3]);
    }
    return sum;
}

double Polynomial::eval(const std::array<double, 4>& pt) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < 4; ++i)
            if (m.exp[i] != 0) t *= std::pow(pt[i], m.exp[i]);
        sum += t;
    }
    return sum;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (!d.is_s_free()) throw std::invalid_argument("divide_exact requires an s-free divisor");
    const auto [lm, lc] = d.leading_term();
    Polynomial rem = *this, quot;
    while (!rem.is_zero()) {
        const auto [rm, rc] = rem.leading_term();
        Monomial q;
        for (int i = 0; i < 3; ++i) {
            q.exp[i] = rm.exp[i] - lm.exp[i];
            if (q.exp[i] < 0) return std::nullopt;
        }
        q.exp[3] = rm.exp[3];
        Polynomial t = term(q, rc / lc);
        quot += t;
        rem -= t * d;
    }
    return quot;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / leading_term().second;
    return *this * inv;
}

Polynomial Polynomial::map_monomials(const std::function<Monomial(const Monomial&)>& f) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        Monomial n = f(m);
        for (int i = 0; i < 3; ++i)
            if (n.exp[i] < 0) throw std::invalid_argument("map_monomials produced a negative exponent");
        r.add_term(n, c);
    }
    return r;
}

std::string Polynomial::to_string(const VarNames& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        const bool unit_monomial = m == Monomial{};
        if (a != 1 || unit_monomial) factors.push_back(polyflow::to_string(a));
        for (int i = 0; i < 3; ++i) {
            if (m.exp[i] == 0) continue;
            factors.push_back(m.exp[i] == 1 ? names[i] : names[i] + "^" + std::to_string(m.exp[i]));
        }
        if (const int k = m.exp[3]; k != 0) {
            if (k == 1) factors.emplace_back("exp(t)");
            else if (k == -1) factors.emplace_back("exp(-t)");
            else factors.push_back("exp(" + std::to_string(k) + "*t)");
        }
        for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
    }
    return out.str();
}

bool canonical_less(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first > ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace polyflow
