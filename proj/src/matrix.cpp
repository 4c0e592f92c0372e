#include "polarcover/matrix.hpp"

#include "polarcover/errors.hpp"

namespace polarcover {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(field)) {}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::from_int(field, 1);
    return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::usage, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Scalar> Matrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Scalar> Matrix::column(std::size_t j) const {
    std::vector<Scalar> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error(ErrorCode::usage, "matrix shape mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw Error(ErrorCode::usage, "vector length mismatch");
    std::vector<Scalar> out(rows_, Scalar(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
    Matrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t sel = r;
        while (sel < rows_ && m(sel, c).is_zero()) ++sel;
        if (sel == rows_) continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(sel, j), m(r, j));
        const Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < cols_; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t Matrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

std::size_t Matrix::rank_by_columns() const {
    // Gaussian elimination on the transpose, pivoting from the last row backwards.
    Matrix m = transposed();
    std::size_t rank = 0;
    std::vector<bool> used(m.rows(), false);
    for (std::size_t c = m.cols(); c-- > 0;) {
        std::size_t sel = m.rows();
        for (std::size_t i = m.rows(); i-- > 0;)
            if (!used[i] && !m(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel == m.rows()) continue;
        used[sel] = true;
        ++rank;
        const Scalar inv = m(sel, c).inverse();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (used[i] || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c) * inv;
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(sel, j);
        }
    }
    return rank;
}

std::vector<std::vector<Scalar>> Matrix::nullspace() const {
    std::vector<std::size_t> piv;
    Matrix m = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols_, Scalar(field_));
        v[f] = Scalar::from_int(field_, 1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw Error(ErrorCode::singular_transform, "only square matrices are invertible");
    Matrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_ + i) = Scalar::from_int(field_, 1);
    }
    std::vector<std::size_t> piv;
    Matrix red = aug.rref(&piv);
    if (piv.size() < rows_ || piv[rows_ - 1] >= cols_)
        throw Error(ErrorCode::singular_transform, "matrix is singular");
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = red(i, cols_ + j);
    return out;
}

Scalar Matrix::determinant() const {
    if (rows_ != cols_) throw Error(ErrorCode::usage, "determinant of a non-square matrix");
    Matrix m = *this;
    Scalar det = Scalar::from_int(field_, 1);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t sel = c;
        while (sel < rows_ && m(sel, c).is_zero()) ++sel;
        if (sel == rows_) return Scalar(field_);
        if (sel != c) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(sel, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        const Scalar inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (m(i, c).is_zero()) continue;
            const Scalar f = m(i, c) * inv;
            for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

}  // namespace polarcover
