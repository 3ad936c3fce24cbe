#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rep2ldc/fixtures.hpp"
#include "rep2ldc/group.hpp"
#include "support.hpp"

using namespace rep2ldc;
using test::mat;
using test::vec;

namespace {

std::set<std::vector<std::uint32_t>> members(const PrimeField& f, const Subspace<Zp>& u, Index n) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& v : test::all_vectors(f, n))
    if (u.contains(v)) {
      std::vector<std::uint32_t> key;
      for (Index k = 0; k < n; ++k) key.push_back(v(k).residue());
      out.insert(key);
    }
  return out;
}

std::vector<std::uint32_t> key_of(const Vector<Zp>& v) {
  std::vector<std::uint32_t> key;
  for (Index k = 0; k < v.size(); ++k) key.push_back(v(k).residue());
  return key;
}

// Every subspace of GF(2)^3, as the span of each subset of nonzero vectors.
std::vector<Subspace<Zp>> all_gf2_cube_subspaces(const PrimeField& f) {
  const auto vs = test::all_vectors(f, 3);
  std::vector<Subspace<Zp>> out;
  for (unsigned mask = 0; mask < (1u << vs.size()); ++mask) {
    Matrix<Zp> rows(0, 3);
    for (std::size_t k = 0; k < vs.size(); ++k) {
      if (!(mask & (1u << k))) continue;
      rows.conservativeResize(rows.rows() + 1, 3);
      rows.row(rows.rows() - 1) = vs[k].transpose();
    }
    Subspace<Zp> u(rows, 3);
    bool seen = false;
    for (const auto& w : out) seen = seen || w == u;
    if (!seen) out.push_back(u);
  }
  return out;
}

}  // namespace

TEST_CASE("prime field arithmetic is canonical", "[exactla]") {
  const PrimeField f(7);
  CHECK(f.from_int(-1).residue() == 6);
  CHECK(f.from_int(10) == f.from_int(3));
  CHECK((f.from_int(3) * inverse(f.from_int(3))) == f.one());
  CHECK(inverse(f.from_int(3)).residue() == 5);
  CHECK(f.from_rational(Rational(1) / 2).residue() == 4);
  CHECK_THROWS_AS(inverse(f.zero()), Error);
  CHECK_THROWS_AS(PrimeField(7).from_rational(Rational(1) / 7), Error);
  CHECK((Zp(1) + f.from_int(6)) == f.zero());
}

TEST_CASE("rationals parse and print in lowest terms", "[exactla]") {
  CHECK(parse_rational("6/4") == Rational(3) / 2);
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK(to_string(Rational(3) / 2) == "3/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("field specs carry theta", "[exactla]") {
  CHECK(FieldSpec::rational().theta() == 1);
  CHECK(FieldSpec::prime(3).theta() == Rational(2) / 3);
  CHECK(FieldSpec::prime(11).theta() == Rational(10) / 11);
  CHECK_THROWS_AS(FieldSpec::from_characteristic(4), Error);
  CHECK_THROWS_AS(FieldSpec::from_characteristic(1), Error);
  CHECK(FieldSpec::prime(5).name() == "GF(5)");
  CHECK(FieldSpec::rational().name() == "Q");
}

TEST_CASE("rref examples", "[exactla]") {
  const PrimeField f3(3), f5(5);
  auto id = rref(identity(f3, 2));
  CHECK(equal(id.reduced, identity(f3, 2)));
  CHECK(id.rank == 2);

  auto r = rref(mat(f5, {{1, 2}, {2, 4}}));
  CHECK(equal(r.reduced, mat(f5, {{1, 2}, {0, 0}})));
  CHECK(r.rank == 1);
  CHECK(r.pivot_cols == std::vector<Index>{0});

  auto z = rref(zeros(f5, 3, 3));
  CHECK(is_zero_matrix(z.reduced));
  CHECK(z.rank == 0);
}

TEST_CASE("rank examples", "[exactla]") {
  const PrimeField f3(3), f11(11);
  CHECK(rank(mat(f3, {{-2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}})) == 1);
  CHECK(rank(identity(f11, 5)) == 5);
  CHECK(rank(mat(f11, {{-1, 1}, {1, -1}})) == 1);
  CHECK(rank(identity(RationalField{}, 4)) == 4);
}

TEST_CASE("nullspace examples", "[exactla]") {
  const PrimeField f2(2);
  CHECK(nullspace(f2, identity(f2, 3)).dim() == 0);
  CHECK(nullspace(f2, zeros(f2, 2, 3)).dim() == 3);

  const Matrix<Zp> m = mat(f2, {{1, 1, 0}});
  const auto ns = nullspace(f2, m);
  CHECK(ns.dim() == 2);
  CHECK(ns.contains(vec(f2, {1, 1, 0})));
  CHECK(ns.contains(vec(f2, {0, 0, 1})));
  std::set<std::vector<std::uint32_t>> oracle;
  for (const auto& v : test::all_vectors(f2, 3))
    if (is_zero_matrix((m * v).eval())) oracle.insert(key_of(v));
  CHECK(members(f2, ns, 3) == oracle);
}

TEST_CASE("rank factorization examples", "[exactla]") {
  const PrimeField f3(3), f11(11);
  auto rf = rank_factorize(identity(f3, 2));
  CHECK(rf.rank == 2);
  CHECK(equal(rf.Y, identity(f3, 2)));
  CHECK(equal(rf.X, identity(f3, 2)));

  const Matrix<Zp> d = mat(f3, {{-2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  rf = rank_factorize(d);
  CHECK(rf.rank == 1);
  CHECK(equal((rf.Y * rf.X.transpose()).eval(), d));
  CHECK(column_space(rf.Y) == column_space(mat(f3, {{1}, {0}, {0}, {0}})));
  CHECK(column_space(rf.X) == column_space(mat(f3, {{1}, {0}, {0}, {0}})));

  const Matrix<Zp> e = mat(f11, {{-1, 1}, {1, -1}});
  rf = rank_factorize(e);
  CHECK(rf.rank == 1);
  CHECK(equal((rf.Y * rf.X.transpose()).eval(), e));

  try {
    rank_factorize(zeros(f3, 2, 2));
    FAIL("expected ZeroMatrix");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ZeroMatrix);
  }
}

TEST_CASE("orthogonal complement examples", "[exactla]") {
  const RationalField q;
  const auto e1 = row_space(mat(q, {{1, 0, 0}}));
  CHECK(orth_complement(q, e1) == row_space(mat(q, {{0, 1, 0}, {0, 0, 1}})));
  CHECK(orth_complement(q, full_space(q, 3)).dim() == 0);

  const PrimeField f2(2);
  const auto diag = row_space(mat(f2, {{1, 1}}));
  CHECK(orth_complement(f2, diag) == diag);
}

TEST_CASE("subspace sum, containment and images", "[exactla]") {
  const RationalField q;
  std::vector<Subspace<Rational>> parts{row_space(mat(q, {{1, 0, 0}})), row_space(mat(q, {{0, 1, 0}}))};
  const auto s = subspace_sum<Rational>(parts, 3);
  CHECK(s.dim() == 2);
  CHECK(subspace_contains(s, parts[0]));
  CHECK_FALSE(subspace_contains(parts[0], s));

  const auto u = row_space(mat(q, {{1, 2, 3}}));
  CHECK(rep2ldc::apply(identity(q, 3), u) == u);

  const PrimeField f5(5);
  const Matrix<Zp> shift = mat(f5, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK(rep2ldc::apply(shift, row_space(mat(f5, {{1, 0, 0, 0}}))) == row_space(mat(f5, {{0, 1, 0, 0}})));

  std::vector<Subspace<Zp>> bad{row_space(mat(f5, {{1, 0}})), row_space(mat(f5, {{1, 0, 0}}))};
  CHECK_THROWS_AS(subspace_sum<Zp>(bad, 3), Error);
}

TEST_CASE("every subspace of GF(2)^3 against brute force", "[exactla][oracle]") {
  const PrimeField f2(2);
  const auto subspaces = all_gf2_cube_subspaces(f2);
  REQUIRE(subspaces.size() == 16);
  const auto vs = test::all_vectors(f2, 3);
  for (const auto& u : subspaces) {
    const auto uset = members(f2, u, 3);
    CHECK(uset.size() == (std::size_t{1} << u.dim()));

    const auto perp = orth_complement(f2, u);
    CHECK(u.dim() + perp.dim() == 3);
    std::set<std::vector<std::uint32_t>> oracle;
    for (const auto& w : vs) {
      bool orth = true;
      for (const auto& x : vs)
        if (u.contains(x) && !is_zero(test::dot(w, x))) orth = false;
      if (orth) oracle.insert(key_of(w));
    }
    CHECK(members(f2, perp, 3) == oracle);

    for (const auto& v : subspaces) {
      std::vector<Subspace<Zp>> pair{u, v};
      const auto sum = subspace_sum<Zp>(pair, 3);
      std::set<std::vector<std::uint32_t>> sum_oracle;
      for (const auto& a : vs)
        for (const auto& b : vs)
          if (u.contains(a) && v.contains(b)) sum_oracle.insert(key_of((a + b).eval()));
      CHECK(members(f2, sum, 3) == sum_oracle);

      const auto vset = members(f2, v, 3);
      const bool inside = std::includes(uset.begin(), uset.end(), vset.begin(), vset.end());
      CHECK(subspace_contains(u, v) == inside);
    }
  }
}

TEST_CASE("rank is transpose invariant and rref is idempotent", "[exactla][property]") {
  std::mt19937_64 rng(11);
  const PrimeField f5(5);
  const RationalField q;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> dim(1, 6);
    const Index r = dim(rng), c = dim(rng);
    const auto m = test::random_matrix(f5, r, c, rng, 0, 4);
    CHECK(rank(m) == rank(Matrix<Zp>(m.transpose())));
    const auto once = rref(m);
    CHECK(equal(rref(once.reduced).reduced, once.reduced));
    CHECK(once.rank <= std::min(r, c));

    const auto mq = test::random_matrix(q, r, c, rng, -3, 3);
    CHECK(rank(mq) == rank(Matrix<Rational>(mq.transpose())));
    CHECK(nullspace(q, mq).dim() == c - rank(mq));
  }
}

TEST_CASE("rank factorization reproduces D with full-rank factors", "[exactla][property]") {
  std::mt19937_64 rng(5);
  const PrimeField f3(3);
  const RationalField q;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> dim(1, 6);
    const Index n = dim(rng);
    // Low-rank products hit every rank between 1 and n.
    const Index inner = std::uniform_int_distribution<Index>(1, n)(rng);
    const auto a = test::random_matrix(f3, n, inner, rng, 0, 2);
    const auto b = test::random_matrix(f3, inner, n, rng, 0, 2);
    const Matrix<Zp> d = a * b;
    if (is_zero_matrix(d)) continue;
    const auto rf = rank_factorize(d);
    CHECK(equal((rf.Y * rf.X.transpose()).eval(), d));
    CHECK(rank(rf.Y) == rank(d));
    CHECK(rank(rf.X) == rank(d));
    CHECK(rf.rank == rank(d));

    const auto dq = (test::random_matrix(q, n, inner, rng, -2, 2) * test::random_matrix(q, inner, n, rng, -2, 2)).eval();
    if (is_zero_matrix(dq)) continue;
    const auto rq = rank_factorize(dq);
    CHECK(equal((rq.Y * rq.X.transpose()).eval(), dq));
    CHECK(rank(rq.Y) == rq.rank);
    CHECK(rank(rq.X) == rq.rank);
  }
}

TEST_CASE("images compose along group products", "[exactla][property]") {
  const auto fx = signed_shift_group(3, 5);
  const PrimeField f5(5);
  const auto group = close_group(f5, fx.group);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<ElemRef> pick(0, group.order() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = row_space(test::random_matrix(f5, 2, 3, rng, 0, 4));
    const ElemRef g = pick(rng), h = pick(rng);
    CHECK(rep2ldc::apply(group[g], rep2ldc::apply(group[h], u)) == rep2ldc::apply(group[group.multiply(g, h)], u));
  }
}

TEST_CASE("incremental basis agrees with rref rank", "[exactla][property]") {
  std::mt19937_64 rng(17);
  const PrimeField f3(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = test::random_matrix(f3, 6, 4, rng, 0, 2);
    IncrementalBasis<Zp> basis(4);
    for (Index r = 0; r < m.rows(); ++r) basis.add(m.row(r).transpose());
    CHECK(basis.dim() == rank(m));
    CHECK(basis.span() == row_space(m));
  }
}
