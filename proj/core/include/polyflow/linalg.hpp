#pragma once

#include "polyflow/rational.hpp"

#include <cstddef>
#include <vector>

namespace polyflow {

using QVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals. Sizes here are tiny
/// (tens of rows), so nothing fancier than Gauss–Jordan is warranted.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static QMatrix identity(std::size_t n);
    static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

    [[nodiscard]] QMatrix transpose() const;
    [[nodiscard]] QVector column(std::size_t c) const;
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    [[nodiscard]] QVector apply(const QVector& v) const;

    /// Reduced row-echelon form in place; returns pivot column indices.
    std::vector<std::size_t> rref();
    [[nodiscard]] std::size_t rank() const;
    /// Basis of {v : A v = 0}; one vector per free column with that entry 1.
    [[nodiscard]] std::vector<QVector> nullspace() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Canonical RREF basis of span(vectors): nonzero rows of the reduced
/// row-echelon form of the matrix whose rows are the given vectors.
std::vector<QVector> rref_basis(const std::vector<QVector>& vectors);

/// Characteristic polynomial det(tI - A), coefficients lowest degree first,
/// monic (last entry 1). Faddeev–LeVerrier.
QVector characteristic_polynomial(const QMatrix& a);

/// Distinct rational roots of a univariate polynomial (coefficients lowest
/// degree first), ascending. Candidates come from the rational root theorem;
/// each is confirmed exactly and deflated.
std::vector<Rational> rational_roots(const QVector& coeffs);

/// Evaluates a univariate polynomial (lowest degree first) by Horner.
Rational eval_univariate(const QVector& coeffs, const Rational& t);

}  // namespace polyflow
