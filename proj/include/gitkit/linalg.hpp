#ifndef GITKIT_LINALG_HPP
#define GITKIT_LINALG_HPP

#include "gitkit/rational.hpp"

#include <cstddef>
#include <vector>

namespace gitkit {

/// Dense exact rational matrix, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Throws std::invalid_argument for ragged input.
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t nrows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    RationalVector row(std::size_t r) const;
    RationalVector column(std::size_t c) const;
    std::vector<RationalVector> to_rows() const;

    bool is_zero() const;
    RationalMatrix transpose() const;
    Rational trace() const;

    RationalMatrix& operator+=(const RationalMatrix& o);
    RationalMatrix& operator-=(const RationalMatrix& o);
    RationalMatrix& operator*=(const Rational& c);
    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
    friend RationalMatrix operator*(RationalMatrix a, const Rational& c) { return a *= c; }
    friend RationalMatrix operator*(const Rational& c, RationalMatrix a) { return a *= c; }
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// [a, b] = ab - ba.
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

struct RowEchelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;
};
/// Reduced row echelon form.
RowEchelon rref(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);
/// Throws std::invalid_argument for singular or non-square input.
RationalMatrix inverse(const RationalMatrix& m);
/// Basis of {v : m v = 0}, one vector per free column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);
/// Linearly independent subset (in order) spanning the same space as `vectors`.
std::vector<RationalVector> independent_subset(const std::vector<RationalVector>& vectors);
/// True iff m^n = 0 for n = m.rows().
bool is_nilpotent(const RationalMatrix& m);
RationalMatrix power(const RationalMatrix& m, unsigned e);

}  // namespace gitkit

#endif
