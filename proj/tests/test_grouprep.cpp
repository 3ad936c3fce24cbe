#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rep2ldc/fixtures.hpp"
#include "rep2ldc/group.hpp"
#include "support.hpp"

using namespace rep2ldc;
using test::mat;
using test::vec;

namespace {

// Naive fixpoint closure over all pairwise products.
template <typename Scalar>
std::set<std::string> brute_closure(const Field<Scalar>& field, const std::vector<Matrix<Scalar>>& gens) {
  std::vector<Matrix<Scalar>> elems{identity(field, gens.front().rows())};
  std::set<std::string> keys{element_key(elems.front())};
  for (const auto& g : gens)
    if (keys.insert(element_key(g)).second) elems.push_back(g);
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = elems.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Matrix<Scalar> p = elems[a] * elems[b];
        if (keys.insert(element_key(p)).second) {
          elems.push_back(std::move(p));
          grew = true;
        }
      }
  }
  return keys;
}

template <typename Scalar>
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("closure examples", "[grouprep]") {
  const PrimeField f3(3), f11(11);
  std::vector<Matrix<Zp>> just_id{identity(f3, 3)};
  CHECK(close_group<Zp>(f3, just_id).order() == 1);

  std::vector<Matrix<Zp>> ss{mat(f3, {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                             mat(f3, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}})};
  const auto g64 = close_group<Zp>(f3, ss);
  CHECK(g64.order() == 64);

  std::vector<Matrix<Zp>> d5{mat(f11, {{9, 0}, {0, 5}}), mat(f11, {{0, 1}, {1, 0}})};
  const auto g10 = close_group<Zp>(f11, d5);
  CHECK(g10.order() == 10);
  CHECK(brute_closure(f11, d5).size() == 10);
  CHECK(brute_closure(f3, ss).size() == 64);
}

TEST_CASE("closure errors", "[grouprep]") {
  const PrimeField f3(3);
  std::vector<Matrix<Zp>> ss{mat(f3, {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                             mat(f3, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}})};
  CHECK(code_of<Zp>([&] { close_group<Zp>(f3, ss, 10); }) == ErrorCode::CapExceeded);
  std::vector<Matrix<Zp>> singular{mat(f3, {{1, 1}, {1, 1}})};
  CHECK(code_of<Zp>([&] { close_group<Zp>(f3, singular); }) == ErrorCode::NotInvertible);
  std::vector<Matrix<Zp>> mixed{identity(f3, 2), identity(f3, 3)};
  CHECK(code_of<Zp>([&] { close_group<Zp>(f3, mixed); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("element orders", "[grouprep]") {
  const PrimeField f3(3);
  std::vector<Matrix<Zp>> ss{mat(f3, {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                             mat(f3, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}})};
  const auto g = close_group<Zp>(f3, ss);
  CHECK(element_order(g, g.identity_pos()) == 1);
  CHECK(element_order(g, g.position(ss[0])) == 2);
  CHECK(element_order(g, g.position(ss[1])) == 4);
  // Oracle: repeated multiplication of matrices.
  for (ElemRef x = 0; x < g.order(); ++x) {
    Matrix<Zp> p = g[x];
    std::size_t k = 1;
    while (!equal(p, identity(f3, 4))) {
      p = (p * g[x]).eval();
      ++k;
    }
    CHECK(element_order(g, x) == k);
  }
}

TEST_CASE("multiplication cycles", "[grouprep]") {
  const auto ss = signed_shift_group(4, 3);
  const PrimeField f3(3);
  const auto g = close_group(f3, ss.group);
  CHECK(mult_cycles(g, g.identity_pos()).cycles.size() == 64);
  const auto c2 = mult_cycles(g, witness_position(g, ss));
  CHECK(c2.cycles.size() == 32);
  for (const auto& cyc : c2.cycles) CHECK(cyc.size() == 2);

  const auto c6 = cyclic_rep(6, 7);
  const PrimeField f7(7);
  const auto g6 = close_group(f7, c6.group);
  const ElemRef h = g6.position(mat(f7, {{2}}));
  CHECK(element_order(g6, h) == 3);
  const auto c3 = mult_cycles(g6, h);
  CHECK(c3.cycles.size() == 2);
  for (const auto& cyc : c3.cycles) CHECK(cyc.size() == 3);
}

TEST_CASE("burnside irreducibility", "[grouprep]") {
  const PrimeField f3(3), f11(11);
  CHECK(burnside_irreducible(close_group(f3, signed_shift_group(4, 3).group)));
  std::vector<Matrix<Zp>> trivial{identity(f3, 2)};
  CHECK_FALSE(burnside_irreducible(close_group<Zp>(f3, trivial)));
  std::vector<Matrix<Zp>> d5{mat(f11, {{9, 0}, {0, 5}}), mat(f11, {{0, 1}, {1, 0}})};
  CHECK(burnside_irreducible(close_group<Zp>(f11, d5)));
  CHECK_FALSE(burnside_irreducible(close_group(f3, shift_rep(4, 3).group)));
}

TEST_CASE("spinning", "[grouprep]") {
  const PrimeField f3(3);
  const auto ss = close_group(f3, signed_shift_group(4, 3).group);
  CHECK(spin(ss, vec(f3, {1, 0, 0, 0})).dim() == 4);
  CHECK(spin(ss, vec(f3, {1, 2, 0, 1})).dim() == 4);
  const auto sh = close_group(f3, shift_rep(4, 3).group);
  const auto line = spin(sh, vec(f3, {1, 1, 1, 1}));
  CHECK(line.dim() == 1);
  CHECK(line.contains(vec(f3, {1, 1, 1, 1})));
  CHECK(code_of<Zp>([&] { spin(sh, vec(f3, {0, 0, 0, 0})); }) == ErrorCode::ZeroVector);
}

TEST_CASE("fixed spaces", "[grouprep]") {
  const PrimeField f3(3), f11(11);
  const auto fx = signed_shift_group(4, 3);
  const auto g = close_group(f3, fx.group);
  CHECK(fixed_space(g, g.identity_pos()).dim() == 4);
  CHECK(fixed_space(g, witness_position(g, fx)).dim() == 3);
  std::vector<Matrix<Zp>> d5{mat(f11, {{9, 0}, {0, 5}}), mat(f11, {{0, 1}, {1, 0}})};
  const auto d = close_group<Zp>(f11, d5);
  CHECK(fixed_space(d, d.position(d5[0])).dim() == 0);
}

TEST_CASE("group invariants on fixtures", "[grouprep][property]") {
  for (const char* name : {"signed-shift(3,5)", "dihedral(5,11)", "symmetric(4,5)", "cyclic(6,7)", "shift(4,3)",
                           "signed-shift(3,0)", "symmetric(3,0)"}) {
    INFO(name);
    const Fixture fx = fixture_by_name(name);
    with_field(fx.group.field, [&](const auto& field) {
      const auto g = close_group(field, fx.group);
      const Index n = g.dim();
      CHECK(equal(g[g.identity_pos()], identity(field, n)));
      std::set<std::string> keys;
      for (const auto& e : g.elements()) keys.insert(element_key(e));
      CHECK(keys.size() == g.order());
      for (ElemRef a = 0; a < g.order(); ++a) {
        CHECK(equal(g[g.multiply(a, g.inverse_of(a))], identity(field, n)));
        for (ElemRef b = 0; b < g.order(); ++b) CHECK(g.contains((g[a] * g[b]).eval()));
        const auto word = g.word(a);
        Matrix<typename std::decay_t<decltype(field)>::Scalar> p = identity(field, n);
        for (auto k : word) p = (p * g.generator_matrices()[k]).eval();
        CHECK(equal(p, g[a]));

        const auto cyc = mult_cycles(g, a);
        std::size_t total = 0;
        for (const auto& c : cyc.cycles) {
          total += c.size();
          CHECK(c.size() == element_order(g, a));
          for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[(k + 1) % c.size()] == g.multiply(a, c[k]));
        }
        CHECK(total == g.order());
        CHECK(fixed_space(g, a).dim() + rank_minus_identity(g, a) == n);
      }
      const auto v = unit_vector(field, n, 0);
      const auto s = spin(g, v);
      for (const auto& gen : g.generator_matrices()) CHECK(subspace_contains(s, rep2ldc::apply(gen, s)));
    });
  }
}
