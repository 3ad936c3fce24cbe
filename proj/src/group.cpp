#include "rep2ldc/group.hpp"

#include <deque>

namespace rep2ldc {

std::string element_key(const Matrix<Zp>& m) {
  std::string key;
  key.reserve(static_cast<std::size_t>(m.size()) * 4);
  for (Index i = 0; i < m.size(); ++i) {
    std::uint32_t r = m(i).residue();
    key.append(reinterpret_cast<const char*>(&r), sizeof r);
  }
  return key;
}

std::string element_key(const Matrix<Rational>& m) {
  std::string key;
  for (Index i = 0; i < m.size(); ++i) {
    key += to_string(m(i));
    key += ',';
  }
  return key;
}

template <typename Scalar>
bool MatrixGroup<Scalar>::contains(const Matrix<Scalar>& m) const {
  return m.rows() == dim_ && m.cols() == dim_ && index_.count(element_key(m)) > 0;
}

template <typename Scalar>
ElemRef MatrixGroup<Scalar>::position(const Matrix<Scalar>& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorCode::DimensionMismatch, "not a group element");
  auto it = index_.find(element_key(m));
  if (it == index_.end()) throw Error(ErrorCode::InvalidArgument, "matrix is not an element of the group");
  return it->second;
}

template <typename Scalar>
ElemRef MatrixGroup<Scalar>::multiply(ElemRef a, ElemRef b) const {
  return position((elements_.at(a) * elements_.at(b)).eval());
}

template <typename Scalar>
ElemRef MatrixGroup<Scalar>::inverse_of(ElemRef a) const {
  ElemRef x = a;
  ElemRef prev = identity_pos();
  while (x != identity_pos()) {
    prev = x;
    x = multiply(x, a);
  }
  return prev;
}

template <typename Scalar>
std::vector<std::size_t> MatrixGroup<Scalar>::word(ElemRef g) const {
  std::vector<std::size_t> w;
  for (ElemRef x = g; x != identity_pos(); x = parent_.at(x)) w.push_back(parent_gen_[x]);
  return {w.rbegin(), w.rend()};
}

template <typename Scalar>
MatrixGroup<Scalar> MatrixGroup<Scalar>::close(const Field<Scalar>& field,
                                               std::span<const Matrix<Scalar>> generators, std::size_t cap) {
  MatrixGroup group(field);
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "at least one generator is required");
  group.dim_ = generators.front().rows();
  const Index n = group.dim_;
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::DimensionMismatch, "generators must be square, same size");
    if (rank(g) != n) throw Error(ErrorCode::NotInvertible, "generator is singular");
    group.generator_mats_.push_back(canonicalize(field, g));
  }

  auto insert = [&](Matrix<Scalar> m, ElemRef parent, std::size_t gen) {
    auto [it, fresh] = group.index_.emplace(element_key(m), group.elements_.size());
    if (!fresh) return it->second;
    if (group.elements_.size() >= cap)
      throw Error(ErrorCode::CapExceeded, "group closure exceeds cap " + std::to_string(cap));
    group.elements_.push_back(std::move(m));
    group.parent_.push_back(parent);
    group.parent_gen_.push_back(gen);
    return it->second;
  };

  insert(identity(field, n), 0, 0);
  for (std::size_t next = 0; next < group.elements_.size(); ++next) {
    for (std::size_t k = 0; k < group.generator_mats_.size(); ++k) {
      Matrix<Scalar> y = group.elements_[next] * group.generator_mats_[k];
      insert(std::move(y), next, k);
    }
  }
  for (const auto& g : group.generator_mats_) group.generator_pos_.push_back(group.position(g));
  return group;
}

template <typename Scalar>
MatrixGroup<Scalar> close_group(const Field<Scalar>& field, std::span<const Matrix<Scalar>> generators,
                                std::size_t cap) {
  return MatrixGroup<Scalar>::close(field, generators, cap);
}

template <typename Scalar>
MatrixGroup<Scalar> close_group(const Field<Scalar>& field, const GroupSpec& spec) {
  if (!(field.spec() == spec.field)) throw Error(ErrorCode::DimensionMismatch, "group spec field mismatch");
  std::vector<Matrix<Scalar>> gens;
  for (const auto& g : spec.generators) {
    if (g.rows() != spec.dim || g.cols() != spec.dim)
      throw Error(ErrorCode::DimensionMismatch, "generator shape does not match dim");
    gens.push_back(g.unaryExpr([&field](const Rational& x) { return field.from_rational(x); }));
  }
  return close_group<Scalar>(field, gens, spec.cap);
}

template <typename Scalar>
std::size_t element_order(const MatrixGroup<Scalar>& group, ElemRef g) {
  std::size_t order = 1;
  for (ElemRef x = g; x != group.identity_pos(); x = group.multiply(x, g)) ++order;
  return order;
}

template <typename Scalar>
CycleDecomposition mult_cycles(const MatrixGroup<Scalar>& group, ElemRef h) {
  CycleDecomposition out;
  out.h = h;
  std::vector<bool> seen(group.order(), false);
  for (ElemRef s = 0; s < group.order(); ++s) {
    if (seen[s]) continue;
    std::vector<ElemRef> cycle;
    for (ElemRef x = s; !seen[x]; x = group.multiply(h, x)) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

template <typename Scalar>
bool burnside_irreducible(const MatrixGroup<Scalar>& group) {
  const Index n = group.dim();
  IncrementalBasis<Scalar> span(n * n);
  for (const auto& g : group.elements()) {
    span.add(g.reshaped());
    if (span.full()) return true;
  }
  return false;
}

template <typename Scalar>
Subspace<Scalar> spin(const MatrixGroup<Scalar>& group, const Vector<Scalar>& v) {
  if (is_zero_matrix(v)) throw Error(ErrorCode::ZeroVector, "cannot spin the zero vector");
  IncrementalBasis<Scalar> basis(group.dim());
  std::deque<Vector<Scalar>> pending{v};
  basis.add(v);
  while (!pending.empty() && !basis.full()) {
    Vector<Scalar> u = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : group.generator_matrices()) {
      Vector<Scalar> w = g * u;
      if (basis.add(w)) pending.push_back(std::move(w));
    }
  }
  return basis.span();
}

template <typename Scalar>
Subspace<Scalar> fixed_space(const MatrixGroup<Scalar>& group, ElemRef h) {
  return nullspace(group.field(), Matrix<Scalar>(group[h] - identity(group.field(), group.dim())));
}

template <typename Scalar>
Index rank_minus_identity(const MatrixGroup<Scalar>& group, ElemRef h) {
  return rank(Matrix<Scalar>(group[h] - identity(group.field(), group.dim())));
}

#define REP2LDC_INSTANTIATE_GROUP(S)                                                                   \
  template class MatrixGroup<S>;                                                                       \
  template MatrixGroup<S> close_group<S>(const Field<S>&, std::span<const Matrix<S>>, std::size_t);    \
  template MatrixGroup<S> close_group<S>(const Field<S>&, const GroupSpec&);                           \
  template std::size_t element_order<S>(const MatrixGroup<S>&, ElemRef);                               \
  template CycleDecomposition mult_cycles<S>(const MatrixGroup<S>&, ElemRef);                          \
  template bool burnside_irreducible<S>(const MatrixGroup<S>&);                                        \
  template Subspace<S> spin<S>(const MatrixGroup<S>&, const Vector<S>&);                               \
  template Subspace<S> fixed_space<S>(const MatrixGroup<S>&, ElemRef);                                 \
  template Index rank_minus_identity<S>(const MatrixGroup<S>&, ElemRef);

REP2LDC_INSTANTIATE_GROUP(Zp)
REP2LDC_INSTANTIATE_GROUP(Rational)

}  // namespace rep2ldc
