#include "polarcover/projective.hpp"

#include "polarcover/errors.hpp"

namespace polarcover {

ProjPoint::ProjPoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorCode::usage, "projective point needs coordinates");
    std::size_t i = 0;
    while (i < coords_.size() && coords_[i].is_zero()) ++i;
    if (i == coords_.size()) throw Error(ErrorCode::usage, "all coordinates of a projective point are zero");
    pivot_ = i;
    if (!coords_[i].is_one()) {
        const Scalar inv = coords_[i].inverse();
        for (auto& c : coords_) c *= inv;
    }
}

std::vector<std::string> ProjPoint::to_strings() const {
    std::vector<std::string> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.to_string());
    return out;
}

ProjPoint basis_point(const Field& field, std::size_t r, std::size_t index) {
    std::vector<Scalar> v(r + 1, Scalar(field));
    v.at(index) = Scalar::from_int(field, 1);
    return ProjPoint(std::move(v));
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() == 0 || basis_.rank() != basis_.rows())
        throw Error(ErrorCode::invalid_subspace, "subspace basis is not of full row rank");
}

Subspace Subspace::from_equations(const Matrix& forms) {
    auto kernel = forms.nullspace();
    if (kernel.empty()) throw Error(ErrorCode::invalid_subspace, "equations cut out the empty set");
    return Subspace(Matrix::from_rows(forms.field(), kernel));
}

Subspace Subspace::coordinate(const Field& field, std::size_t r, const std::vector<std::size_t>& indices) {
    Matrix b(field, indices.size(), r + 1);
    for (std::size_t i = 0; i < indices.size(); ++i) b(i, indices[i]) = Scalar::from_int(field, 1);
    return Subspace(std::move(b));
}

Matrix Subspace::dual() const {
    auto forms = basis_.nullspace();
    if (forms.empty()) return Matrix(field(), 0, basis_.cols());
    return Matrix::from_rows(field(), forms);
}

Matrix Subspace::canonical_basis() const { return basis_.rref(); }

bool Subspace::operator==(const Subspace& rhs) const {
    return basis_.cols() == rhs.basis_.cols() && basis_.rows() == rhs.basis_.rows() &&
           canonical_basis() == rhs.canonical_basis();
}

bool contains_point(const Subspace& s, const ProjPoint& x) {
    if (x.size() != s.basis().cols()) throw Error(ErrorCode::usage, "point and subspace live in different spaces");
    Matrix m(s.field(), s.basis().rows() + 1, s.basis().cols());
    for (std::size_t i = 0; i < s.basis().rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = s.basis()(i, j);
    for (std::size_t j = 0; j < m.cols(); ++j) m(s.basis().rows(), j) = x[j];
    return m.rank() == s.basis().rows();
}

bool contains_subspace(const Subspace& outer, const Subspace& inner) {
    for (std::size_t i = 0; i < inner.basis().rows(); ++i)
        if (!contains_point(outer, ProjPoint(inner.basis().row(i)))) return false;
    return true;
}

// ---------------------------------------------------------------- Transform

Transform::Transform(Matrix matrix) : matrix_(std::move(matrix)), inverse_(matrix_.inverse()) {}

Transform Transform::identity(const Field& field, std::size_t n) { return Transform(Matrix::identity(field, n)); }

Transform Transform::inverse() const { return Transform(inverse_); }

Transform Transform::then(const Transform& after) const { return Transform(after.matrix_ * matrix_); }

bool Transform::is_identity() const { return matrix_ == Matrix::identity(matrix_.field(), matrix_.rows()); }

ProjPoint Transform::apply(const ProjPoint& x) const { return ProjPoint(matrix_.apply(x.coords())); }

Subspace Transform::apply(const Subspace& s) const {
    return Subspace((matrix_ * s.basis().transposed()).transposed());
}

Poly Transform::apply(const Poly& g) const { return substitute_linear(g, inverse_); }

Poly substitute_linear(const Poly& g, const Matrix& m) {
    if (m.rows() != g.nvars() || m.cols() != g.nvars())
        throw Error(ErrorCode::usage, "linear substitution matrix does not match the frame");
    std::vector<Poly> images;
    images.reserve(g.nvars());
    for (std::size_t i = 0; i < g.nvars(); ++i) {
        Poly img(g.field(), g.frame());
        for (std::size_t j = 0; j < g.nvars(); ++j) {
            Exponent e(g.nvars(), 0);
            e[j] = 1;
            img.add_term(e, m(i, j));
        }
        img.mark_homogeneous(1);
        images.push_back(std::move(img));
    }
    return g.substitute(images);
}

Poly poly_substitute(const Poly& g, std::span<const Poly> images) { return g.substitute(images); }

Poly poly_substitute(const Poly& g, const Transform& t) { return t.apply(g); }

Transform adapt_frame(const Subspace& l0, std::size_t q, std::size_t r) {
    if (l0.ambient_dim() != r) throw Error(ErrorCode::usage, "subspace lives in another ambient space");
    if (l0.dim() != q) throw Error(ErrorCode::invalid_subspace, "subspace has dimension " + std::to_string(l0.dim()) +
                                                                    ", expected " + std::to_string(q));
    std::vector<std::size_t> pivots;
    Matrix echelon = l0.basis().rref(&pivots);
    if (pivots.size() != q + 1) throw Error(ErrorCode::invalid_subspace, "rank-deficient subspace basis");
    const Field& f = l0.field();
    // columns: echelon rows, then unit vectors on the non-pivot coordinates
    Matrix completion(f, r + 1, r + 1);
    for (std::size_t k = 0; k <= q; ++k)
        for (std::size_t i = 0; i <= r; ++i) completion(i, k) = echelon(k, i);
    std::vector<bool> is_pivot(r + 1, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t col = q + 1;
    for (std::size_t i = 0; i <= r; ++i)
        if (!is_pivot[i]) completion(i, col++) = Scalar::from_int(f, 1);
    // completion sends e_k to the k-th echelon row; its inverse adapts the frame
    return Transform(completion.inverse());
}

const FramePtr& line_frame() {
    static const FramePtr frame = Frame::make({"t"});
    return frame;
}

Poly line_restrict(const Poly& g, std::span<const Scalar> eta, std::span<const Scalar> xi) {
    if (eta.size() != g.nvars() || xi.size() != g.nvars())
        throw Error(ErrorCode::usage, "line endpoints do not match the frame");
    const Field& f = g.field();
    Matrix pair(f, 2, g.nvars());
    for (std::size_t j = 0; j < g.nvars(); ++j) {
        pair(0, j) = eta[j];
        pair(1, j) = xi[j];
    }
    if (pair.rank() < 2) throw Error(ErrorCode::degenerate_line, "line through two equal points");
    std::vector<Poly> images;
    images.reserve(g.nvars());
    for (std::size_t j = 0; j < g.nvars(); ++j) {
        const Scalar c[2] = {eta[j], xi[j]};
        images.push_back(univariate(f, line_frame(), c));
    }
    Poly out = g.substitute(images);
    out.clear_homogeneous();
    return out;
}

Poly line_restrict(const Poly& g, const ProjPoint& eta, const ProjPoint& xi) {
    return line_restrict(g, std::span<const Scalar>(eta.coords()), std::span<const Scalar>(xi.coords()));
}

}  // namespace polarcover
