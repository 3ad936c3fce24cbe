#include "rep2ldc/fixtures.hpp"

#include <numeric>
#include <regex>

namespace rep2ldc {

namespace {

Matrix<Rational> rational_zeros(Index n) { return Matrix<Rational>::Constant(n, n, Rational(0)); }

Matrix<Rational> rational_identity(Index n) {
  Matrix<Rational> m = rational_zeros(n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

// Permutation matrix with e_i -> e_{perm[i]}.
Matrix<Rational> permutation_matrix(const std::vector<Index>& perm) {
  const auto n = static_cast<Index>(perm.size());
  Matrix<Rational> m = rational_zeros(n);
  for (Index i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = 1;
  return m;
}

Matrix<Rational> cyclic_shift(Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = (i + 1) % n;
  return permutation_matrix(perm);
}

std::string canonical_name(const std::string& family, std::int64_t a, std::int64_t b) {
  return family + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Fixture finish(Fixture f) {
  const FixtureCheck check = check_fixture(f);
  if (!check.passed) {
    std::string why;
    for (const auto& s : check.failures) why += (why.empty() ? "" : "; ") + s;
    throw Error(ErrorCode::InternalInconsistency, f.name + ": " + why);
  }
  return f;
}

// Matrix of the permutation sigma on the basis b_i = e_i - e_{i+1} of the
// sum-zero subspace. A sum-zero vector v has coordinates c_r = v_0 + ... + v_r.
Matrix<Rational> standard_matrix(const std::vector<Index>& sigma) {
  const auto k = static_cast<Index>(sigma.size());
  Matrix<Rational> m = rational_zeros(k - 1);
  for (Index i = 0; i + 1 < k; ++i) {
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(0));
    v[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] += 1;
    v[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i + 1)])] -= 1;
    Rational prefix = 0;
    for (Index r = 0; r + 1 < k; ++r) {
      prefix += v[static_cast<std::size_t>(r)];
      m(r, i) = prefix;
    }
  }
  return m;
}

}  // namespace

Rational root_of_unity(std::size_t k, std::uint32_t p) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "root of unity of order 0");
  if (p == 0) {
    if (k == 1) return 1;
    if (k == 2) return -1;
    throw Error(ErrorCode::NoRootOfUnity, "Q has no root of unity of order " + std::to_string(k));
  }
  if ((p - 1) % k != 0)
    throw Error(ErrorCode::NoRootOfUnity,
                std::to_string(k) + " does not divide " + std::to_string(p - 1) + " = p - 1");
  for (std::uint64_t x = 1; x < p; ++x) {
    std::uint64_t power = x;
    std::size_t order = 1;
    while (power != 1) {
      power = power * x % p;
      ++order;
    }
    if (order == k) return Rational(x);
  }
  throw Error(ErrorCode::NoRootOfUnity, "no element of order " + std::to_string(k));
}

Fixture signed_shift_group(Index n, std::uint32_t p, std::size_t cap) {
  if (p == 2) throw Error(ErrorCode::CharTwo, "signed shifts need characteristic != 2");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "signed-shift needs n >= 2");
  Fixture f;
  f.family = "signed-shift";
  f.name = canonical_name(f.family, n, p);
  f.params = {n, p};
  f.group.field = FieldSpec::from_characteristic(p);
  f.group.dim = n;
  f.group.cap = cap;
  Matrix<Rational> flip = rational_identity(n);
  flip(0, 0) = -1;
  f.group.generators = {flip, cyclic_shift(n)};
  f.witness = flip;
  f.expected = {{"order", n * (std::int64_t{1} << n)}, {"dim", n}, {"irreducible", 1}, {"witness_rank", 1}};
  return finish(std::move(f));
}

Fixture dihedral_rep(std::size_t k, std::uint32_t p, std::size_t cap) {
  const auto fs = FieldSpec::from_characteristic(p);
  const Rational zeta = root_of_unity(k, p);
  Fixture f;
  f.family = "dihedral";
  f.name = canonical_name(f.family, static_cast<std::int64_t>(k), p);
  f.params = {static_cast<std::int64_t>(k), p};
  f.group.field = fs;
  f.group.dim = 2;
  f.group.cap = cap;
  Matrix<Rational> rot = rational_zeros(2);
  rot(0, 0) = zeta;
  rot(1, 1) = p == 0 ? Rational(1) / zeta : PrimeField(p).to_rational(inverse(PrimeField(p).from_rational(zeta)));
  const Matrix<Rational> swap = permutation_matrix({1, 0});
  f.group.generators = {rot, swap};
  f.witness = swap;
  f.expected = {{"order", static_cast<std::int64_t>(2 * k)}, {"dim", 2}, {"witness_rank", 1}};
  if (k >= 3) f.expected["irreducible"] = 1;
  return finish(std::move(f));
}

Fixture symmetric_standard_rep(std::size_t k, std::uint32_t p, std::size_t cap) {
  const auto fs = FieldSpec::from_characteristic(p);
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "symmetric needs k >= 3");
  if (p != 0 && k % p == 0)
    throw Error(ErrorCode::BadCharacteristic, std::to_string(p) + " divides " + std::to_string(k));
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    factorial *= i;
    if (factorial > cap)
      throw Error(ErrorCode::CapExceeded, "S_" + std::to_string(k) + " exceeds the cap of " + std::to_string(cap));
  }
  Fixture f;
  f.family = "symmetric";
  f.name = canonical_name(f.family, static_cast<std::int64_t>(k), p);
  f.params = {static_cast<std::int64_t>(k), p};
  f.group.field = fs;
  f.group.dim = static_cast<Index>(k) - 1;
  f.group.cap = cap;
  std::vector<Index> transposition(k), cycle(k);
  std::iota(transposition.begin(), transposition.end(), Index{0});
  std::swap(transposition[0], transposition[1]);
  for (std::size_t i = 0; i < k; ++i) cycle[i] = static_cast<Index>((i + 1) % k);
  f.group.generators = {standard_matrix(transposition), standard_matrix(cycle)};
  f.witness = f.group.generators[0];
  f.expected = {{"order", static_cast<std::int64_t>(factorial)},
                {"dim", static_cast<std::int64_t>(k) - 1},
                {"irreducible", 1},
                {"witness_rank", 1}};
  return finish(std::move(f));
}

Fixture cyclic_rep(std::size_t k, std::uint32_t p, std::size_t cap) {
  const auto fs = FieldSpec::from_characteristic(p);
  const Rational zeta = root_of_unity(k, p);
  Fixture f;
  f.family = "cyclic";
  f.name = canonical_name(f.family, static_cast<std::int64_t>(k), p);
  f.params = {static_cast<std::int64_t>(k), p};
  f.group.field = fs;
  f.group.dim = 1;
  f.group.cap = cap;
  Matrix<Rational> g = rational_zeros(1);
  g(0, 0) = zeta;
  f.group.generators = {g};
  f.witness = g;
  f.expected = {{"order", static_cast<std::int64_t>(k)},
                {"dim", 1},
                {"irreducible", 1},
                {"witness_rank", k > 1 ? 1 : 0}};
  return finish(std::move(f));
}

Fixture shift_rep(Index n, std::uint32_t p, std::size_t cap) {
  const auto fs = FieldSpec::from_characteristic(p);
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "shift needs n >= 2");
  Fixture f;
  f.family = "shift";
  f.name = canonical_name(f.family, n, p);
  f.params = {n, p};
  f.group.field = fs;
  f.group.dim = n;
  f.group.cap = cap;
  f.group.generators = {cyclic_shift(n)};
  f.witness = f.group.generators[0];
  f.expected = {{"order", n}, {"dim", n}, {"irreducible", 0}, {"witness_rank", n - 1}};
  return finish(std::move(f));
}

Fixture fixture_by_name(const std::string& text, std::size_t cap) {
  static const std::regex pattern(R"(\s*([a-z-]+)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern))
    throw Error(ErrorCode::Parse, "fixture must look like name(a,b): '" + text + "'");
  const std::string family = match[1];
  std::uint64_t a = 0, b = 0;
  try {
    a = std::stoull(match[2]);
    b = std::stoull(match[3]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "fixture parameters out of range: '" + text + "'");
  }
  if (a > 64 || b > 0xffffffffULL) throw Error(ErrorCode::Parse, "fixture parameters out of range: '" + text + "'");
  const auto p = static_cast<std::uint32_t>(b);
  if (family == "signed-shift") return signed_shift_group(static_cast<Index>(a), p, cap);
  if (family == "dihedral") return dihedral_rep(a, p, cap);
  if (family == "symmetric") return symmetric_standard_rep(a, p, cap);
  if (family == "cyclic") return cyclic_rep(a, p, cap);
  if (family == "shift") return shift_rep(static_cast<Index>(a), p, cap);
  throw Error(ErrorCode::Parse, "unknown fixture family '" + family + "'");
}

std::vector<std::string> fixture_catalog() {
  return {
      "signed-shift(n,p)  diagonal sign changes and cyclic shifts, order n*2^n, p != 2",
      "dihedral(k,p)      <diag(z, 1/z), swap> with z of order k, needs k | p-1",
      "symmetric(k,p)     standard (k-1)-dim representation of S_k, needs p not dividing k",
      "cyclic(k,p)        1-dim, generated by an element of order k, needs k | p-1",
      "shift(n,p)         cyclic shift matrices only, reducible",
  };
}

FixtureCheck check_fixture(const Fixture& fixture) {
  FixtureCheck check;
  with_field(fixture.group.field, [&](const auto& field) {
    const auto group = close_group(field, fixture.group);
    check.actual["order"] = static_cast<std::int64_t>(group.order());
    check.actual["dim"] = group.dim();
    check.actual["irreducible"] = burnside_irreducible(group) ? 1 : 0;
    check.actual["witness_rank"] = rank_minus_identity(group, witness_position(group, fixture));
  });
  for (const auto& [key, want] : fixture.expected) {
    const auto it = check.actual.find(key);
    if (it == check.actual.end() || it->second != want) {
      check.passed = false;
      check.failures.push_back(key + ": expected " + std::to_string(want) + ", got " +
                               (it == check.actual.end() ? "nothing" : std::to_string(it->second)));
    }
  }
  return check;
}

}  // namespace rep2ldc
