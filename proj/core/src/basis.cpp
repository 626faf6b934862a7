#include "polyflow/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyflow {

MonomialBasis::MonomialBasis(std::vector<Monomial> monomials) : monos_(std::move(monomials)) {
    for (std::size_t i = 0; i < monos_.size(); ++i)
        if (!index_.emplace(monos_[i], i).second) throw std::invalid_argument("duplicate monomial in basis");
}

MonomialBasis MonomialBasis::spatial(int lo, int hi) {
    std::vector<Monomial> ms;
    for (int d = std::max(lo, 0); d <= hi; ++d)
        for (int ex = d; ex >= 0; --ex)
            for (int ey = d - ex; ey >= 0; --ey) ms.emplace_back(ex, ey, d - ex - ey);
    std::sort(ms.begin(), ms.end(), std::greater<>());
    return MonomialBasis(std::move(ms));
}

std::size_t MonomialBasis::index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("monomial outside basis");
    return it->second;
}

QVector MonomialBasis::coordinates(const Polynomial& p) const {
    QVector v(monos_.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) v[index(m)] = c;
    return v;
}

Polynomial MonomialBasis::polynomial(const QVector& v) const {
    if (v.size() != monos_.size()) throw std::invalid_argument("coordinate vector size mismatch");
    Polynomial p;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p += Polynomial::term(monos_[i], v[i]);
    return p;
}

}  // namespace polyflow
