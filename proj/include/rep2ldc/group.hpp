#pragma once

// Finite matrix groups enumerated from generators. The representation is the
// inclusion map: a group element IS its matrix, so rho(g) = g throughout.

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rep2ldc/linalg.hpp"

namespace rep2ldc {

inline constexpr std::size_t kDefaultGroupCap = 200'000;

/// Position of an element in the canonical (breadth-first) enumeration.
using ElemRef = std::size_t;

/// Field-independent description of a group: generators with exact rational
/// entries, reduced into the target field when the group is closed.
struct GroupSpec {
  FieldSpec field = FieldSpec::rational();
  Index dim = 0;
  std::vector<Matrix<Rational>> generators;
  std::size_t cap = kDefaultGroupCap;
};

std::string element_key(const Matrix<Zp>& m);
std::string element_key(const Matrix<Rational>& m);

template <typename Scalar>
class MatrixGroup {
 public:
  const Field<Scalar>& field() const { return field_; }
  Index dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }

  const Matrix<Scalar>& operator[](ElemRef g) const { return elements_[g]; }
  const std::vector<Matrix<Scalar>>& elements() const { return elements_; }

  ElemRef identity_pos() const { return 0; }
  /// Positions of the generators (duplicates and identity generators collapse).
  const std::vector<ElemRef>& generators() const { return generator_pos_; }
  const std::vector<Matrix<Scalar>>& generator_matrices() const { return generator_mats_; }

  bool contains(const Matrix<Scalar>& m) const;
  /// Throws InvalidArgument if m is not an element.
  ElemRef position(const Matrix<Scalar>& m) const;
  /// Position of g_a * g_b.
  ElemRef multiply(ElemRef a, ElemRef b) const;
  ElemRef inverse_of(ElemRef a) const;

  /// Generator indices k_1..k_r with element = gen_{k_1} * ... * gen_{k_r}.
  std::vector<std::size_t> word(ElemRef g) const;

  static MatrixGroup close(const Field<Scalar>& field, std::span<const Matrix<Scalar>> generators,
                           std::size_t cap);

 private:
  explicit MatrixGroup(const Field<Scalar>& field) : field_(field) {}

  Field<Scalar> field_;
  Index dim_ = 0;
  std::vector<Matrix<Scalar>> elements_;
  std::unordered_map<std::string, ElemRef> index_;
  std::vector<Matrix<Scalar>> generator_mats_;
  std::vector<ElemRef> generator_pos_;
  std::vector<ElemRef> parent_;
  std::vector<std::size_t> parent_gen_;
};

/// Breadth-first closure: g_1 = I, then right products by generators in order.
/// Throws CapExceeded past `cap` elements and NotInvertible for singular input.
template <typename Scalar>
MatrixGroup<Scalar> close_group(const Field<Scalar>& field, std::span<const Matrix<Scalar>> generators,
                                std::size_t cap = kDefaultGroupCap);

template <typename Scalar>
MatrixGroup<Scalar> close_group(const Field<Scalar>& field, const GroupSpec& spec);

template <typename Scalar>
std::size_t element_order(const MatrixGroup<Scalar>& group, ElemRef g);

struct CycleDecomposition {
  ElemRef h = 0;
  std::vector<std::vector<ElemRef>> cycles;  // s, h s, h^2 s, ...
};

/// Cycles of the permutation s -> h s of the group.
template <typename Scalar>
CycleDecomposition mult_cycles(const MatrixGroup<Scalar>& group, ElemRef h);

/// True iff the elements span all n x n matrices (absolute irreducibility).
/// False does not prove reducibility over a non-splitting field.
template <typename Scalar>
bool burnside_irreducible(const MatrixGroup<Scalar>& group);

/// Smallest group-invariant subspace containing v.
template <typename Scalar>
Subspace<Scalar> spin(const MatrixGroup<Scalar>& group, const Vector<Scalar>& v);

/// C(h) = {v : h v = v}.
template <typename Scalar>
Subspace<Scalar> fixed_space(const MatrixGroup<Scalar>& group, ElemRef h);

/// rank(h - I), the codimension of the fixed space.
template <typename Scalar>
Index rank_minus_identity(const MatrixGroup<Scalar>& group, ElemRef h);

}  // namespace rep2ldc
