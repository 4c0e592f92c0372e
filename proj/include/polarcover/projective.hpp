#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polarcover/matrix.hpp"
#include "polarcover/poly.hpp"

namespace polarcover {

/// Point of P^r; the first nonzero coordinate is scaled to 1.
class ProjPoint {
  public:
    explicit ProjPoint(std::vector<Scalar> coords);

    const std::vector<Scalar>& coords() const noexcept { return coords_; }
    std::size_t size() const noexcept { return coords_.size(); }
    const Scalar& operator[](std::size_t i) const { return coords_.at(i); }
    const Field& field() const { return coords_.front().field(); }
    std::size_t pivot() const noexcept { return pivot_; }
    bool operator==(const ProjPoint& rhs) const { return coords_ == rhs.coords_; }
    std::vector<std::string> to_strings() const;

  private:
    std::vector<Scalar> coords_;
    std::size_t pivot_ = 0;
};

ProjPoint basis_point(const Field& field, std::size_t r, std::size_t index);

/// Projective linear subspace stored by a full-row-rank basis.
class Subspace {
  public:
    explicit Subspace(Matrix basis);
    static Subspace from_equations(const Matrix& forms);
    static Subspace coordinate(const Field& field, std::size_t r, const std::vector<std::size_t>& indices);

    const Matrix& basis() const noexcept { return basis_; }
    const Field& field() const noexcept { return basis_.field(); }
    std::size_t dim() const noexcept { return basis_.rows() - 1; }
    std::size_t ambient_dim() const noexcept { return basis_.cols() - 1; }
    /// Linear forms cutting out the subspace, computed by nullspace extraction.
    Matrix dual() const;
    /// Reduced row echelon basis; equal subspaces share it.
    Matrix canonical_basis() const;
    bool operator==(const Subspace& rhs) const;

  private:
    Matrix basis_;
};

bool contains_point(const Subspace& s, const ProjPoint& x);
bool contains_subspace(const Subspace& outer, const Subspace& inner);

/// Invertible projective coordinate change x -> M x with cached inverse.
class Transform {
  public:
    explicit Transform(Matrix matrix);
    static Transform identity(const Field& field, std::size_t n);

    const Matrix& matrix() const noexcept { return matrix_; }
    const Matrix& inverse_matrix() const noexcept { return inverse_; }
    std::size_t size() const noexcept { return matrix_.rows(); }
    Transform inverse() const;
    /// (after ∘ this): first this, then `after`.
    Transform then(const Transform& after) const;
    bool is_identity() const;

    ProjPoint apply(const ProjPoint& x) const;
    Subspace apply(const Subspace& s) const;
    /// Equation of the image hypersurface: G^T(x) = G(M^{-1} x).
    Poly apply(const Poly& g) const;

  private:
    Matrix matrix_;
    Matrix inverse_;
};

/// X_i -> sum_j m(i, j) X_j.
Poly substitute_linear(const Poly& g, const Matrix& m);
/// Per-variable substitution (images share a frame and field).
Poly poly_substitute(const Poly& g, std::span<const Poly> images);
/// Push-forward along a Transform (same as Transform::apply).
Poly poly_substitute(const Poly& g, const Transform& t);

/// Transform sending L0 (dimension q in P^r) onto {Y_{q+1} = ... = Y_r = 0}.
/// Deterministic: completes the echelon basis of L0 by the non-pivot unit vectors.
Transform adapt_frame(const Subspace& l0, std::size_t q, std::size_t r);

/// One-variable frame {t}.
const FramePtr& line_frame();

/// G(eta + t xi) as a polynomial in t; t = 0 is eta.
Poly line_restrict(const Poly& g, const ProjPoint& eta, const ProjPoint& xi);

/// Same with raw coordinate vectors (no normalization); used where the
/// representative matters, e.g. affine charts.
Poly line_restrict(const Poly& g, std::span<const Scalar> eta, std::span<const Scalar> xi);

}  // namespace polarcover
