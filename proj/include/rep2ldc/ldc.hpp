#pragma once

// Linear locally decodable codes in the combinatorial form used throughout:
// a sequence of m vectors in F^t together with, for each coordinate i, a
// matching of disjoint q-sets whose vectors span the unit vector e_i.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rep2ldc/field.hpp"

namespace rep2ldc {

/// Disjoint family of q-element index sets.
struct QMatching {
  std::size_t q = 2;
  std::vector<std::vector<std::size_t>> sets;

  std::size_t size() const { return sets.size(); }
};

enum class CodeForm { General, Special2 };

const char* to_string(CodeForm form);

template <typename Scalar>
struct LdcInstance {
  FieldSpec field = FieldSpec::rational();
  std::size_t t = 0;  // code dimension
  std::size_t m = 0;  // code length
  std::vector<Vector<Scalar>> vectors;
  std::vector<QMatching> matchings;  // one per coordinate
  CodeForm form = CodeForm::General;
  std::size_t q = 2;
  Rational claimed_delta = 0;
};

struct CoordinateReport {
  std::size_t coordinate = 0;
  std::size_t matching_size = 0;
  bool set_sizes_ok = true;
  bool indices_in_range = true;
  bool disjoint = true;
  bool spans = true;
  std::vector<std::string> problems;

  bool ok() const { return set_sizes_ok && indices_in_range && disjoint && spans; }
};

struct VerificationReport {
  CodeForm form = CodeForm::General;
  bool well_formed = true;
  std::vector<std::string> shape_problems;
  std::vector<CoordinateReport> coordinates;
  std::size_t total_matched = 0;
  Rational achieved_delta = 0;
  Rational claimed_delta = 0;
  bool meets_claim = false;
  bool passed = false;
};

/// Checks the instance against its own declared form.
template <typename Scalar>
VerificationReport verify(const Field<Scalar>& field, const LdcInstance<Scalar>& code);

/// Checks the instance against `form` (a special code must also pass as general).
template <typename Scalar>
VerificationReport verify(const Field<Scalar>& field, const LdcInstance<Scalar>& code, CodeForm form);

/// Sum of matching sizes over m * t, exactly.
template <typename Scalar>
Rational achieved_delta(const LdcInstance<Scalar>& code);

/// e_i = lambda (a - b) for some lambda, i.e. a - b is a nonzero multiple of e_i.
/// Returns lambda when it exists.
template <typename Scalar>
std::optional<Scalar> special_pair_scalar(const Vector<Scalar>& a, const Vector<Scalar>& b, Index i);

template <typename Scalar>
bool spans_unit_vector(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& vectors,
                       const std::vector<std::size_t>& set, Index i);

/// Maximum set of disjoint pairs that agree off coordinate i and differ at i.
///
/// Vectors sharing the punctured vector (coordinate i deleted) form a
/// complete multipartite graph, parts keyed by the value at i; its maximum
/// matching has size min(floor(B/2), B - largest part) and is reached by
/// always pairing across the two largest remaining parts.
template <typename Scalar>
QMatching max_special_matching(const std::vector<Vector<Scalar>>& vectors, Index i);

/// Greedy maximal disjoint subfamily, scanning candidates in order.
QMatching greedy_disjoint(const std::vector<std::vector<std::size_t>>& candidates, std::size_t q);

/// greedy_disjoint restricted to the candidates that actually span e_i.
template <typename Scalar>
QMatching greedy_matching_general(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& vectors,
                                  Index i, std::size_t q,
                                  const std::vector<std::vector<std::size_t>>& candidates);

/// All 2^n zero-one vectors (vector k has bit i of k at coordinate i), with
/// the perfect matching {k, k + e_i} on every coordinate.
template <typename Scalar>
LdcInstance<Scalar> hadamard(const Field<Scalar>& field, std::size_t n);

}  // namespace rep2ldc
