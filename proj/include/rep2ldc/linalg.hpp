#pragma once

// Exact dense linear algebra over a Field<Scalar>: row reduction, rank,
// kernels, rank factorizations and subspace arithmetic.
//
// Subspaces are stored by a basis of row vectors in reduced row-echelon form,
// which is canonical: two subspaces are equal iff their bases are equal.

#include <span>
#include <vector>

#include "rep2ldc/field.hpp"

namespace rep2ldc {

template <typename Scalar>
struct RrefResult {
  Matrix<Scalar> reduced;
  Index rank = 0;
  std::vector<Index> pivot_cols;
};

/// Gauss-Jordan elimination, pivoting on the first nonzero entry of each column.
template <typename Scalar>
RrefResult<Scalar> rref(const Matrix<Scalar>& m);

template <typename Scalar>
Index rank(const Matrix<Scalar>& m);

template <typename Scalar>
class Subspace {
 public:
  Subspace() = default;
  /// Row space of `rows`; `ambient_dim` must equal rows.cols().
  Subspace(const Matrix<Scalar>& rows, Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.rows(); }
  const Matrix<Scalar>& basis() const { return basis_; }

  bool contains(const Vector<Scalar>& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && equal(a.basis_, b.basis_);
  }

 private:
  Index ambient_dim_ = 0;
  Matrix<Scalar> basis_;
};

template <typename Scalar>
Subspace<Scalar> row_space(const Matrix<Scalar>& m) {
  return Subspace<Scalar>(m, m.cols());
}

template <typename Scalar>
Subspace<Scalar> column_space(const Matrix<Scalar>& m) {
  return Subspace<Scalar>(m.transpose(), m.rows());
}

template <typename Scalar>
Subspace<Scalar> zero_subspace(Index n) {
  return Subspace<Scalar>(Matrix<Scalar>(0, n), n);
}

template <typename Scalar>
Subspace<Scalar> full_space(const Field<Scalar>& field, Index n) {
  return Subspace<Scalar>(identity(field, n), n);
}

/// {v : M v = 0}.
template <typename Scalar>
Subspace<Scalar> nullspace(const Field<Scalar>& field, const Matrix<Scalar>& m);

template <typename Scalar>
struct RankFactorization {
  Matrix<Scalar> Y;  // n x R, pivot columns of D
  Matrix<Scalar> X;  // n x R, transpose of the nonzero rows of rref(D)
  Index rank = 0;
};

/// D = Y X^t with both factors of full column rank R = rank(D).
/// Throws ZeroMatrix when D = 0.
template <typename Scalar>
RankFactorization<Scalar> rank_factorize(const Matrix<Scalar>& d);

/// Orthogonal complement under the standard bilinear form. Over GF(p) the
/// complement may meet U; only dim U + dim U^perp = n is guaranteed.
template <typename Scalar>
Subspace<Scalar> orth_complement(const Field<Scalar>& field, const Subspace<Scalar>& u);

template <typename Scalar>
Subspace<Scalar> subspace_sum(std::span<const Subspace<Scalar>> parts, Index ambient_dim);

/// True iff V is a subspace of U.
template <typename Scalar>
bool subspace_contains(const Subspace<Scalar>& u, const Subspace<Scalar>& v);

/// Image {g u : u in U}.
template <typename Scalar>
Subspace<Scalar> apply(const Matrix<Scalar>& g, const Subspace<Scalar>& u);

/// Echelon basis that grows one vector at a time; used by closure-style scans
/// (spinning, Burnside spans, greedy spanning families) where a full rref per
/// step would be wasteful.
template <typename Scalar>
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Index ambient_dim) : ambient_dim_(ambient_dim) {}

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return static_cast<Index>(rows_.size()); }
  bool full() const { return dim() == ambient_dim_; }

  /// Adds v if independent of the current span. Returns whether it was added.
  bool add(const Vector<Scalar>& v);
  bool contains(const Vector<Scalar>& v) const;

  Subspace<Scalar> span() const;

 private:
  Vector<Scalar> reduce(Vector<Scalar> v) const;

  Index ambient_dim_;
  std::vector<Vector<Scalar>> rows_;
  std::vector<Index> pivots_;
};

}  // namespace rep2ldc
