#include "polyflow/vector_field.hpp"

#include <stdexcept>

namespace polyflow {

std::string PolyVector::to_string(const VarNames& names) const {
    return "(" + c[0].to_string(names) + ", " + c[1].to_string(names) + ", " + c[2].to_string(names) + ")";
}

VectorField::VectorField(PolyVector components, std::string name, std::map<std::string, Rational> params,
                         int clock_rate, VarNames names)
    : f_(std::move(components)),
      name_(std::move(name)),
      params_(std::move(params)),
      clock_rate_(clock_rate),
      names_(std::move(names)) {
    if (f_.is_zero()) throw std::invalid_argument("vector field '" + name_ + "' has all components zero");
    if (degree() < 1) throw std::invalid_argument("vector field '" + name_ + "' must have degree >= 1");
}

int VectorField::degree() const {
    return std::max({f_[0].degree(), f_[1].degree(), f_[2].degree()});
}

Polynomial apply_derivation(const VectorField& X, const Polynomial& g) {
    Polynomial r = X[0] * g.diff(Var::X) + X[1] * g.diff(Var::Y) + X[2] * g.diff(Var::Z);
    if (Polynomial gs = g.diff(Var::S); !gs.is_zero()) r += Polynomial::clock(1 + X.clock_rate()) * gs;
    return r;
}

PolyVector gradient(const Polynomial& h) { return {h.diff(Var::X), h.diff(Var::Y), h.diff(Var::Z)}; }

PolyVector curl(const PolyVector& j) {
    return {j[2].diff(Var::Y) - j[1].diff(Var::Z), j[0].diff(Var::Z) - j[2].diff(Var::X),
            j[1].diff(Var::X) - j[0].diff(Var::Y)};
}

Polynomial divergence(const PolyVector& f) { return f[0].diff(Var::X) + f[1].diff(Var::Y) + f[2].diff(Var::Z); }

PolyVector cross(const PolyVector& a, const PolyVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Polynomial dot(const PolyVector& a, const PolyVector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace polyflow
