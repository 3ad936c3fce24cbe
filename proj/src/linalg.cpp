#include "rep2ldc/linalg.hpp"

namespace rep2ldc {

template <typename Scalar>
RrefResult<Scalar> rref(const Matrix<Scalar>& m) {
  RrefResult<Scalar> out;
  out.reduced = m;
  Matrix<Scalar>& r = out.reduced;
  Index pivot_row = 0;
  for (Index col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
    Index found = -1;
    for (Index i = pivot_row; i < r.rows(); ++i) {
      if (!is_zero(r(i, col))) {
        found = i;
        break;
      }
    }
    if (found < 0) continue;
    if (found != pivot_row) r.row(found).swap(r.row(pivot_row));
    Scalar inv = inverse(r(pivot_row, col));
    r.row(pivot_row) *= inv;
    for (Index i = 0; i < r.rows(); ++i) {
      if (i == pivot_row || is_zero(r(i, col))) continue;
      Scalar f = r(i, col);
      r.row(i) -= f * r.row(pivot_row);
    }
    out.pivot_cols.push_back(col);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

template <typename Scalar>
Index rank(const Matrix<Scalar>& m) {
  return rref(m).rank;
}

template <typename Scalar>
Subspace<Scalar>::Subspace(const Matrix<Scalar>& rows, Index ambient_dim) : ambient_dim_(ambient_dim) {
  if (rows.cols() != ambient_dim)
    throw Error(ErrorCode::DimensionMismatch, "subspace generators do not live in the ambient space");
  auto red = rref(rows);
  basis_ = red.reduced.topRows(red.rank);
}

template <typename Scalar>
bool Subspace<Scalar>::contains(const Vector<Scalar>& v) const {
  if (v.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "vector length");
  Matrix<Scalar> stacked(dim() + 1, ambient_dim_);
  stacked << basis_, v.transpose();
  return rank(stacked) == dim();
}

template <typename Scalar>
Subspace<Scalar> nullspace(const Field<Scalar>& field, const Matrix<Scalar>& m) {
  const Index n = m.cols();
  auto red = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : red.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<Scalar> kernel = zeros(field, n - red.rank, n);
  Index k = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    kernel(k, free) = field.one();
    for (Index r = 0; r < red.rank; ++r) kernel(k, red.pivot_cols[static_cast<std::size_t>(r)]) = -red.reduced(r, free);
    ++k;
  }
  return Subspace<Scalar>(kernel, n);
}

template <typename Scalar>
RankFactorization<Scalar> rank_factorize(const Matrix<Scalar>& d) {
  auto red = rref(d);
  if (red.rank == 0) throw Error(ErrorCode::ZeroMatrix, "cannot factorize the zero matrix");
  RankFactorization<Scalar> out;
  out.rank = red.rank;
  out.Y.resize(d.rows(), red.rank);
  for (Index r = 0; r < red.rank; ++r) out.Y.col(r) = d.col(red.pivot_cols[static_cast<std::size_t>(r)]);
  out.X = red.reduced.topRows(red.rank).transpose();
  return out;
}

template <typename Scalar>
Subspace<Scalar> orth_complement(const Field<Scalar>& field, const Subspace<Scalar>& u) {
  if (u.dim() == 0) return full_space(field, u.ambient_dim());
  return nullspace(field, u.basis());
}

template <typename Scalar>
Subspace<Scalar> subspace_sum(std::span<const Subspace<Scalar>> parts, Index ambient_dim) {
  Index total = 0;
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim) throw Error(ErrorCode::DimensionMismatch, "subspace_sum");
    total += p.dim();
  }
  Matrix<Scalar> stacked(total, ambient_dim);
  Index at = 0;
  for (const auto& p : parts) {
    stacked.middleRows(at, p.dim()) = p.basis();
    at += p.dim();
  }
  return Subspace<Scalar>(stacked, ambient_dim);
}

template <typename Scalar>
bool subspace_contains(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "subspace_contains");
  if (v.dim() > u.dim()) return false;
  Matrix<Scalar> stacked(u.dim() + v.dim(), u.ambient_dim());
  stacked << u.basis(), v.basis();
  return rank(stacked) == u.dim();
}

template <typename Scalar>
Subspace<Scalar> apply(const Matrix<Scalar>& g, const Subspace<Scalar>& u) {
  if (g.cols() != u.ambient_dim() || g.rows() != g.cols())
    throw Error(ErrorCode::DimensionMismatch, "apply: matrix does not act on the ambient space");
  Matrix<Scalar> image = u.basis() * g.transpose();
  return Subspace<Scalar>(image, g.rows());
}

template <typename Scalar>
Vector<Scalar> IncrementalBasis<Scalar>::reduce(Vector<Scalar> v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = v(pivots_[k]);
    if (!is_zero(c)) v -= c * rows_[k];
  }
  return v;
}

template <typename Scalar>
bool IncrementalBasis<Scalar>::add(const Vector<Scalar>& v) {
  if (v.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "IncrementalBasis::add");
  Vector<Scalar> r = reduce(v);
  for (Index c = 0; c < r.size(); ++c) {
    if (is_zero(r(c))) continue;
    r *= inverse(r(c));
    rows_.push_back(std::move(r));
    pivots_.push_back(c);
    return true;
  }
  return false;
}

template <typename Scalar>
bool IncrementalBasis<Scalar>::contains(const Vector<Scalar>& v) const {
  if (v.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "IncrementalBasis::contains");
  return is_zero_matrix(reduce(v));
}

template <typename Scalar>
Subspace<Scalar> IncrementalBasis<Scalar>::span() const {
  Matrix<Scalar> m(dim(), ambient_dim_);
  for (Index k = 0; k < dim(); ++k) m.row(k) = rows_[static_cast<std::size_t>(k)].transpose();
  return Subspace<Scalar>(m, ambient_dim_);
}

#define REP2LDC_INSTANTIATE_LINALG(S)                                                         \
  template RrefResult<S> rref<S>(const Matrix<S>&);                                           \
  template Index rank<S>(const Matrix<S>&);                                                   \
  template class Subspace<S>;                                                                 \
  template Subspace<S> nullspace<S>(const Field<S>&, const Matrix<S>&);                       \
  template RankFactorization<S> rank_factorize<S>(const Matrix<S>&);                          \
  template Subspace<S> orth_complement<S>(const Field<S>&, const Subspace<S>&);               \
  template Subspace<S> subspace_sum<S>(std::span<const Subspace<S>>, Index);                  \
  template bool subspace_contains<S>(const Subspace<S>&, const Subspace<S>&);                 \
  template Subspace<S> apply<S>(const Matrix<S>&, const Subspace<S>&);                        \
  template class IncrementalBasis<S>;

REP2LDC_INSTANTIATE_LINALG(Zp)
REP2LDC_INSTANTIATE_LINALG(Rational)

}  // namespace rep2ldc
