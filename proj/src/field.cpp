#include "rep2ldc/field.hpp"

#include <ostream>
#include <sstream>
#include <tuple>
#include <utility>

namespace rep2ldc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::IdentityElement: return "IdentityElement";
    case ErrorCode::ScalarMultipleOfIdentity: return "ScalarMultipleOfIdentity";
    case ErrorCode::OrbitDoesNotSpan: return "OrbitDoesNotSpan";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::PairNotSeparated: return "PairNotSeparated";
    case ErrorCode::MatchingCrossesPrefixClass: return "MatchingCrossesPrefixClass";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::NoRootOfUnity: return "NoRootOfUnity";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

// Brings a and b onto a common modulus; unbound literals adopt the other's.
std::uint32_t common_modulus(const Zp& a, const Zp& b) {
  if (a.bound() && b.bound() && a.modulus() != b.modulus())
    throw Error(ErrorCode::DimensionMismatch, "mixing residues of different primes");
  return a.bound() ? a.modulus() : b.modulus();
}

}  // namespace

Zp::Zp(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
  if (modulus < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 2");
  value_ = reduce(value, modulus);
}

std::uint32_t Zp::residue() const {
  if (bound()) return static_cast<std::uint32_t>(value_);
  if (value_ < 0) throw Error(ErrorCode::InvalidArgument, "negative unbound residue");
  return static_cast<std::uint32_t>(value_);
}

Zp& Zp::operator+=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    value_ += rhs.value_;
  } else {
    value_ = reduce(reduce(value_, p) + reduce(rhs.value_, p), p);
    modulus_ = p;
  }
  return *this;
}

Zp& Zp::operator-=(const Zp& rhs) { return *this += -rhs; }

Zp& Zp::operator*=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    value_ *= rhs.value_;
  } else {
    auto a = static_cast<std::uint64_t>(reduce(value_, p));
    auto b = static_cast<std::uint64_t>(reduce(rhs.value_, p));
    value_ = static_cast<std::int64_t>((a * b) % p);
    modulus_ = p;
  }
  return *this;
}

Zp& Zp::operator/=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    if (rhs.value_ != 1 && rhs.value_ != -1)
      throw Error(ErrorCode::InvalidArgument, "division of unbound residues");
    value_ *= rhs.value_;
    return *this;
  }
  return *this *= inverse(Zp(rhs.value_, p));
}

Zp Zp::operator-() const {
  Zp r = *this;
  if (bound())
    r.value_ = value_ == 0 ? 0 : modulus_ - value_;
  else
    r.value_ = -value_;
  return r;
}

bool operator==(const Zp& a, const Zp& b) {
  std::uint32_t p = common_modulus(a, b);
  if (p == 0) return a.value_ == b.value_;
  return reduce(a.value_, p) == reduce(b.value_, p);
}

std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.value_; }

bool is_zero(const Zp& x) { return x == Zp(0); }
bool is_zero(const Rational& x) { return x.is_zero(); }

Zp inverse(const Zp& x) {
  if (!x.bound()) {
    if (x == Zp(1)) return x;
    throw Error(ErrorCode::InvalidArgument, "inverse of unbound residue");
  }
  std::int64_t a = x.residue();
  std::int64_t m = x.modulus();
  if (a == 0) throw Error(ErrorCode::NotInvertible, "inverse of zero in GF(" + std::to_string(m) + ")");
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return Zp(old_s, x.modulus());
}

Rational inverse(const Rational& x) {
  if (x.is_zero()) throw Error(ErrorCode::NotInvertible, "inverse of zero rational");
  return Rational(1) / x;
}

std::string to_string(const Zp& x) { return std::to_string(x.residue()); }

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << '/' << denominator(x);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "not a rational number: '" + text + "'");
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return FieldSpec(p);
}

FieldSpec FieldSpec::from_characteristic(std::uint64_t characteristic) {
  if (characteristic == 0) return rational();
  if (characteristic > 0xffffffffULL)
    throw Error(ErrorCode::InvalidArgument, "characteristic exceeds 32 bits");
  return prime(static_cast<std::uint32_t>(characteristic));
}

Rational FieldSpec::theta() const {
  if (is_rational()) return Rational(1);
  return Rational(1) - Rational(1, characteristic_);
}

std::string FieldSpec::name() const {
  return is_rational() ? std::string("Q") : "GF(" + std::to_string(characteristic_) + ")";
}

Field<Zp>::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

Zp Field<Zp>::from_rational(const Rational& r) const {
  BigInt num = numerator(r) % p_;
  BigInt den = denominator(r) % p_;
  if (num < 0) num += p_;
  if (den == 0)
    throw Error(ErrorCode::BadCharacteristic,
                to_string(r) + " has a denominator divisible by " + std::to_string(p_));
  return Zp(num.convert_to<std::int64_t>(), p_) / Zp(den.convert_to<std::int64_t>(), p_);
}

}  // namespace rep2ldc
