#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "rep2ldc/error.hpp"
#include "rep2ldc/field.hpp"

namespace rep2ldc::test {

template <typename Scalar>
Matrix<Scalar> mat(const Field<Scalar>& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  Matrix<Scalar> m = zeros(field, r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (auto x : row) m(i, j++) = field.from_int(x);
    ++i;
  }
  return m;
}

template <typename Scalar>
Vector<Scalar> vec(const Field<Scalar>& field, std::initializer_list<std::int64_t> xs) {
  Vector<Scalar> v = zero_vector(field, static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = field.from_int(x);
  return v;
}

template <typename Scalar>
Matrix<Scalar> random_matrix(const Field<Scalar>& field, Index r, Index c, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix<Scalar> m = zeros(field, r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = field.from_int(dist(rng));
  return m;
}

/// Every vector of GF(p)^n, in lexicographic order.
inline std::vector<Vector<Zp>> all_vectors(const PrimeField& field, Index n) {
  std::vector<Vector<Zp>> out;
  std::size_t total = 1;
  for (Index k = 0; k < n; ++k) total *= field.characteristic();
  for (std::size_t code = 0; code < total; ++code) {
    Vector<Zp> v = zero_vector(field, n);
    std::size_t rest = code;
    for (Index k = n - 1; k >= 0; --k) {
      v(k) = field.from_int(static_cast<std::int64_t>(rest % field.characteristic()));
      rest /= field.characteristic();
    }
    out.push_back(v);
  }
  return out;
}

template <typename Scalar>
Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  Scalar acc = a(0) * b(0);
  for (Index k = 1; k < a.size(); ++k) acc += a(k) * b(k);
  return acc;
}

/// Code of the Error thrown by fn; InternalInconsistency if nothing is thrown.
template <typename Fn>
ErrorCode error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

}  // namespace rep2ldc::test
