#pragma once

// Small named representations, generated from explicit generators and closed
// on demand.
//
//   signed-shift(n,p)   signed permutation matrices with cyclic shifts, |G| = n 2^n
//   dihedral(k,p)       <diag(zeta, zeta^-1), swap>, |G| = 2k
//   symmetric(k,p)      standard (k-1)-dim representation of S_k
//   cyclic(k,p)         1-dim representation generated by a k-th root of unity
//   shift(n,p)          cyclic shifts only (reducible)
//
// p = 0 selects the rationals wherever the family allows it.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rep2ldc/group.hpp"

namespace rep2ldc {

struct Fixture {
  std::string name;  // canonical form, e.g. "signed-shift(4,3)"
  std::string family;
  std::vector<std::int64_t> params;
  GroupSpec group;
  /// Element whose rank(h - I) is recorded under "witness_rank".
  Matrix<Rational> witness;
  /// "order", "dim", "irreducible" (0/1), "witness_rank".
  std::map<std::string, std::int64_t> expected;
};

/// Throws CharTwo for p = 2, InvalidArgument for n < 2.
Fixture signed_shift_group(Index n, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

/// Throws NoRootOfUnity unless k | p - 1.
Fixture dihedral_rep(std::size_t k, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

/// Throws BadCharacteristic if p | k, CapExceeded if k! > cap.
Fixture symmetric_standard_rep(std::size_t k, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

/// Throws NoRootOfUnity unless k | p - 1 (k <= 2 over Q).
Fixture cyclic_rep(std::size_t k, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

Fixture shift_rep(Index n, std::uint32_t p, std::size_t cap = kDefaultGroupCap);

/// Parses "family(a,b)". Throws Parse on unknown names or bad parameters.
Fixture fixture_by_name(const std::string& text, std::size_t cap = kDefaultGroupCap);

/// One usage line per family.
std::vector<std::string> fixture_catalog();

/// Smallest element of GF(p)^* of multiplicative order exactly k (over Q:
/// 1 or -1). Throws NoRootOfUnity when there is none.
Rational root_of_unity(std::size_t k, std::uint32_t p);

struct FixtureCheck {
  bool passed = true;
  std::map<std::string, std::int64_t> actual;
  std::vector<std::string> failures;
};

/// Closes the group and compares every expected value.
FixtureCheck check_fixture(const Fixture& fixture);

/// Position of the fixture's witness in the closed group.
template <typename Scalar>
ElemRef witness_position(const MatrixGroup<Scalar>& group, const Fixture& fixture) {
  return group.position(from_rational_matrix(group.field(), fixture.witness));
}

}  // namespace rep2ldc
