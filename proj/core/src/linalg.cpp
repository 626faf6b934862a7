#include "polyflow/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyflow {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

QVector QMatrix::column(std::size_t c) const {
    QVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    QMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    QMatrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
}

QVector QMatrix::apply(const QVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: shape mismatch");
    QVector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
}

std::vector<std::size_t> QMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != row)
            for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(sel, c), (*this)(row, c));
        const Rational inv = 1 / (*this)(row, col);
        for (std::size_t c = col; c < cols_; ++c) (*this)(row, c) *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || (*this)(r, col) == 0) continue;
            const Rational f = (*this)(r, col);
            for (std::size_t c = col; c < cols_; ++c) (*this)(r, c) -= f * (*this)(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t QMatrix::rank() const {
    QMatrix m = *this;
    return m.rref().size();
}

std::vector<QVector> QMatrix::nullspace() const {
    QMatrix m = *this;
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols_, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<QVector> rref_basis(const std::vector<QVector>& vectors) {
    if (vectors.empty()) return {};
    const std::size_t n = vectors.front().size();
    QMatrix m(vectors.size(), n);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
    const auto pivots = m.rref();
    std::vector<QVector> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        QVector v(n);
        for (std::size_t c = 0; c < n; ++c) v[c] = m(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

QVector characteristic_polynomial(const QMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("characteristic_polynomial: non-square matrix");
    // c_n = 1, M_0 = 0; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    QVector c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = std::move(next);
        QMatrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

Rational eval_univariate(const QVector& coeffs, const Rational& t) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

namespace {

// Positive divisors of |n|. Trial division; leftovers above the search bound
// are treated as prime, which can only lose candidates for huge coefficients.
std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, int>> factors;
    for (mpz_class p = 2; p * p <= n && p < 2000000; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Synthetic division by (t - r); assumes r is a root.
QVector deflate(const QVector& coeffs, const Rational& r) {
    const std::size_t n = coeffs.size() - 1;
    QVector q(n);
    Rational carry = 0;
    for (std::size_t i = n; i-- > 0;) {
        carry = coeffs[i + 1] + carry * r;
        q[i] = carry;
    }
    return q;
}

}  // namespace

std::vector<Rational> rational_roots(const QVector& input) {
    QVector p = input;
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.size() <= 1) return {};
    std::vector<Rational> roots;
    std::size_t shift = 0;
    while (shift < p.size() && p[shift] == 0) ++shift;
    if (shift) {
        roots.emplace_back(0);
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(shift));
    }
    bool progress = true;
    while (p.size() > 1 && progress) {
        progress = false;
        // Clear denominators to integer coefficients.
        mpz_class l = 1;
        for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        std::vector<mpz_class> ints;
        for (const auto& c : p) ints.push_back(mpz_class(c * l));
        const auto num_divs = divisors(ints.front());
        const auto den_divs = divisors(ints.back());
        std::vector<Rational> cands;
        for (const auto& a : num_divs)
            for (const auto& b : den_divs) {
                Rational q(a, b);
                q.canonicalize();
                cands.push_back(q);
                cands.push_back(-q);
            }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (const auto& q : cands) {
            if (eval_univariate(p, q) == 0) {
                roots.push_back(q);
                p = deflate(p, q);
                while (p.size() > 1 && eval_univariate(p, q) == 0) p = deflate(p, q);
                progress = true;
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace polyflow
