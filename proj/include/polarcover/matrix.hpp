#pragma once

#include <cstddef>
#include <vector>

#include "polarcover/field.hpp"

namespace polarcover {

/// Dense row-major matrix over a FieldContext.
class Matrix {
  public:
    Matrix(Field field, std::size_t rows, std::size_t cols);
    static Matrix identity(Field field, std::size_t n);
    static Matrix from_rows(Field field, const std::vector<std::vector<Scalar>>& rows);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }
    std::vector<Scalar> row(std::size_t i) const;
    std::vector<Scalar> column(std::size_t j) const;

    Matrix operator*(const Matrix& rhs) const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    Matrix transposed() const;
    bool operator==(const Matrix& rhs) const;

    /// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
    Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    /// Rank by column-first elimination; independent pivot order for cross-checks.
    std::size_t rank_by_columns() const;
    /// Basis of {x : A x = 0}, one vector per free column.
    std::vector<std::vector<Scalar>> nullspace() const;
    /// Throws Error(singular_transform) when not invertible.
    Matrix inverse() const;
    Scalar determinant() const;

  private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

}  // namespace polarcover
