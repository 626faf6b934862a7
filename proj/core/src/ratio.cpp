#include "polyflow/ratio.hpp"

#include <stdexcept>

namespace polyflow {

Ratio::Ratio(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("ratio with identically zero denominator");
    // Constant denominators are folded in so polynomial-valued ratios stay polynomial.
    if (den.is_constant()) {
        num = num * (1 / den.leading_term().second);
        den = Polynomial(1);
    }
}

std::optional<Polynomial> Ratio::as_polynomial() const {
    if (!den.is_constant()) return std::nullopt;
    return num * (1 / den.leading_term().second);
}

Ratio Ratio::pow(int k) const {
    if (k >= 0) return {num.pow(static_cast<unsigned>(k)), den.pow(static_cast<unsigned>(k))};
    if (num.is_zero()) throw std::domain_error("zero ratio to a negative power");
    return {den.pow(static_cast<unsigned>(-k)), num.pow(static_cast<unsigned>(-k))};
}

std::string Ratio::to_string(const VarNames& names) const {
    if (den == Polynomial(1)) return num.to_string(names);
    return "(" + num.to_string(names) + ")/(" + den.to_string(names) + ")";
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }

Ratio operator*(const Ratio& a, const Ratio& b) { return {a.num * b.num, a.den * b.den}; }

Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.is_zero()) throw std::domain_error("division by identically zero expression");
    return {a.num * b.den, a.den * b.num};
}

bool equivalent(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }

}  // namespace polyflow
