#pragma once

// Exact scalar fields: prime fields GF(p) with p < 2^32 and the rationals.
//
// Both scalar types plug into Eigen as custom scalars, so dense matrices over
// either field are ordinary Eigen::Matrix objects and products, sums and
// transposes are exact Eigen expressions.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "rep2ldc/error.hpp"

// Boost 1.74 probes any candidate constructor argument for a byte-container
// const_iterator; Eigen 3.4 expressions declare it as void, which is a hard
// error. Eigen expressions are never byte containers.
namespace boost::multiprecision::detail {
template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::Transpose<X>> : boost::false_type {};
template <class X, int R, int C, bool I>
struct is_byte_container<Eigen::Block<X, R, C, I>> : boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : boost::false_type {};
template <class Op, class X, class Y>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, X, Y>> : boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>> : boost::false_type {};
template <class X, class Y, int O>
struct is_byte_container<Eigen::Product<X, Y, O>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::DenseBase<X>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::MatrixBase<X>> : boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace rep2ldc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Residue modulo a prime p.
///
/// A Zp built from a plain integer literal (as Eigen does for Scalar(0) and
/// Scalar(1)) carries no modulus yet; it binds to the modulus of the first
/// bound operand it meets. Every value produced by a Field<Zp> is bound.
class Zp {
 public:
  Zp() = default;
  explicit Zp(int literal) : value_(literal) {}
  Zp(std::int64_t value, std::uint32_t modulus);

  std::uint32_t modulus() const noexcept { return modulus_; }
  bool bound() const noexcept { return modulus_ != 0; }

  /// Canonical residue in [0, p). Unbound literals must be non-negative.
  std::uint32_t residue() const;

  Zp& operator+=(const Zp& rhs);
  Zp& operator-=(const Zp& rhs);
  Zp& operator*=(const Zp& rhs);
  Zp& operator/=(const Zp& rhs);

  friend Zp operator+(Zp a, const Zp& b) { return a += b; }
  friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
  friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
  friend Zp operator/(Zp a, const Zp& b) { return a /= b; }
  Zp operator-() const;

  friend bool operator==(const Zp& a, const Zp& b);
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Zp& x);

 private:
  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

bool is_zero(const Zp& x);
bool is_zero(const Rational& x);
Zp inverse(const Zp& x);
Rational inverse(const Rational& x);
std::string to_string(const Zp& x);
std::string to_string(const Rational& x);

/// Parses "a", "-a" or "a/b" into an exact rational.
Rational parse_rational(const std::string& text);

bool is_prime(std::uint64_t n);

/// Runtime description of the field: characteristic p (prime) or 0 for Q.
class FieldSpec {
 public:
  static FieldSpec rational() { return FieldSpec(0); }
  static FieldSpec prime(std::uint32_t p);
  /// 0 selects the rationals, anything else must be prime.
  static FieldSpec from_characteristic(std::uint64_t characteristic);

  std::uint32_t characteristic() const noexcept { return characteristic_; }
  bool is_rational() const noexcept { return characteristic_ == 0; }

  /// 1 for the (infinite) rationals, 1 - 1/p for GF(p).
  Rational theta() const;

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint32_t c) : characteristic_(c) {}
  std::uint32_t characteristic_ = 0;
};

template <typename Scalar>
class Field;

template <>
class Field<Zp> {
 public:
  using Scalar = Zp;
  explicit Field(std::uint32_t p);

  FieldSpec spec() const { return FieldSpec::prime(p_); }
  std::uint32_t characteristic() const { return p_; }

  Zp zero() const { return Zp(0, p_); }
  Zp one() const { return Zp(1, p_); }
  Zp from_int(std::int64_t v) const { return Zp(v, p_); }
  /// Throws BadCharacteristic when p divides the denominator.
  Zp from_rational(const Rational& r) const;
  Zp canonical(const Zp& x) const { return Zp(x.residue(), p_); }
  Rational to_rational(const Zp& x) const { return Rational(x.residue()); }

 private:
  std::uint32_t p_;
};

template <>
class Field<Rational> {
 public:
  using Scalar = Rational;
  Field() = default;

  FieldSpec spec() const { return FieldSpec::rational(); }
  std::uint32_t characteristic() const { return 0; }

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(std::int64_t v) const { return Rational(v); }
  Rational from_rational(const Rational& r) const { return r; }
  Rational canonical(const Rational& x) const { return x; }
  Rational to_rational(const Rational& x) const { return x; }
};

using PrimeField = Field<Zp>;
using RationalField = Field<Rational>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

template <typename Scalar>
Matrix<Scalar> zeros(const Field<Scalar>& field, Index rows, Index cols) {
  return Matrix<Scalar>::Constant(rows, cols, field.zero());
}

template <typename Scalar>
Vector<Scalar> zero_vector(const Field<Scalar>& field, Index n) {
  return Vector<Scalar>::Constant(n, field.zero());
}

template <typename Scalar>
Matrix<Scalar> identity(const Field<Scalar>& field, Index n) {
  Matrix<Scalar> m = zeros(field, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <typename Scalar>
Vector<Scalar> unit_vector(const Field<Scalar>& field, Index n, Index i) {
  Vector<Scalar> v = zero_vector(field, n);
  v(i) = field.one();
  return v;
}

/// Rebinds every entry to the field's canonical representative.
template <typename Derived>
auto canonicalize(const Field<typename Derived::Scalar>& field, const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([&field](const typename Derived::Scalar& x) { return field.canonical(x); }).eval();
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Exact entrywise equality (Eigen's operator== on custom scalars, spelled out).
template <typename A, typename B>
bool equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

/// Calls `fn(Field<S>{...})` with the concrete field selected by `spec`.
template <typename Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return std::invoke(std::forward<Fn>(fn), RationalField{});
  return std::invoke(std::forward<Fn>(fn), PrimeField{spec.characteristic()});
}

}  // namespace rep2ldc

namespace Eigen {

template <>
struct NumTraits<rep2ldc::Zp> : GenericNumTraits<rep2ldc::Zp> {
  using Real = rep2ldc::Zp;
  using NonInteger = rep2ldc::Zp;
  using Literal = rep2ldc::Zp;
  using Nested = rep2ldc::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<rep2ldc::Rational> : GenericNumTraits<rep2ldc::Rational> {
  using Real = rep2ldc::Rational;
  using NonInteger = rep2ldc::Rational;
  using Literal = rep2ldc::Rational;
  using Nested = rep2ldc::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace rep2ldc {

/// Reduces an exact rational matrix into the field.
template <typename Scalar>
Matrix<Scalar> from_rational_matrix(const Field<Scalar>& field, const Matrix<Rational>& m) {
  return m.unaryExpr([&field](const Rational& x) { return field.from_rational(x); }).eval();
}

/// Canonical rational representatives (residues in [0, p) over GF(p)).
template <typename Scalar>
Matrix<Rational> to_rational_matrix(const Field<Scalar>& field, const Matrix<Scalar>& m) {
  return m.unaryExpr([&field](const Scalar& x) { return field.to_rational(x); }).eval();
}

}  // namespace rep2ldc
