#include "gitkit/linalg.hpp"

#include <stdexcept>

namespace gitkit {

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows)
{
    if (rows.empty()) return {};
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& cols, std::size_t nrows)
{
    RationalMatrix m(nrows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != nrows) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < nrows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const
{
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const
{
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<RationalVector> RationalMatrix::to_rows() const
{
    std::vector<RationalVector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

bool RationalMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Rational RationalMatrix::trace() const
{
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c)
{
    for (auto& x : data_) x *= c;
    return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    RationalMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
        }
    return m;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& v)
{
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    RationalVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

RowEchelon rref(RationalMatrix m)
{
    RowEchelon out;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
        std::size_t sel = prow;
        while (sel < m.rows() && sgn(m(sel, c)) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(prow, k));
        Rational inv = 1 / m(prow, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(prow, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow || sgn(m(r, c)) == 0) continue;
            Rational f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(prow, k);
        }
        out.pivots.push_back(c);
        ++prow;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

Rational determinant(const RationalMatrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    RationalMatrix a = m;
    Rational det = 1;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && sgn(a(sel, c)) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(sel, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (sgn(a(r, c)) == 0) continue;
            Rational f = a(r, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
        }
    }
    return det;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    auto e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::invalid_argument("singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m)
{
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<RationalVector> independent_subset(const std::vector<RationalVector>& vectors)
{
    if (vectors.empty()) return {};
    const std::size_t n = vectors.front().size();
    auto e = rref(RationalMatrix::from_columns(vectors, n));
    std::vector<RationalVector> out;
    for (auto p : e.pivots) out.push_back(vectors[p]);
    return out;
}

RationalMatrix power(const RationalMatrix& m, unsigned e)
{
    RationalMatrix result = RationalMatrix::identity(m.rows());
    RationalMatrix base = m;
    while (e) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return result;
}

bool is_nilpotent(const RationalMatrix& m)
{
    if (!m.is_square()) return false;
    return power(m, static_cast<unsigned>(m.rows())).is_zero();
}

}  // namespace gitkit
