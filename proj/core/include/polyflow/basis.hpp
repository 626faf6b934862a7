#pragma once

#include "polyflow/linalg.hpp"
#include "polyflow/polynomial.hpp"

#include <map>
#include <vector>

namespace polyflow {

/// An ordered monomial basis with coordinate maps in both directions.
class MonomialBasis {
public:
    MonomialBasis() = default;
    explicit MonomialBasis(std::vector<Monomial> monomials);

    /// All s-free monomials of spatial degree lo..hi, descending.
    static MonomialBasis spatial(int lo, int hi);

    [[nodiscard]] std::size_t size() const { return monos_.size(); }
    [[nodiscard]] const std::vector<Monomial>& monomials() const { return monos_; }
    [[nodiscard]] const Monomial& operator[](std::size_t i) const { return monos_[i]; }
    [[nodiscard]] bool contains(const Monomial& m) const { return index_.count(m) != 0; }
    [[nodiscard]] std::size_t index(const Monomial& m) const;

    /// Coordinates of p; throws std::out_of_range if p has a term outside the basis.
    [[nodiscard]] QVector coordinates(const Polynomial& p) const;
    [[nodiscard]] Polynomial polynomial(const QVector& v) const;

private:
    std::vector<Monomial> monos_;
    std::map<Monomial, std::size_t> index_;
};

}  // namespace polyflow
