#include "rep2ldc/construct.hpp"

#include <algorithm>
#include <random>

#include "rep2ldc/bounds.hpp"

namespace rep2ldc {

const char* to_string(ConstructionMode mode) {
  switch (mode) {
    case ConstructionMode::General: return "general";
    case ConstructionMode::Special2: return "special2";
    case ConstructionMode::Lambda: return "lambda";
  }
  return "general";
}

template <typename Scalar>
Matrix<Scalar> combine(const MatrixGroup<Scalar>& group, const std::vector<ElemRef>& hs,
                       const std::vector<Scalar>& alphas) {
  if (hs.size() != alphas.size() || hs.empty())
    throw Error(ErrorCode::InvalidArgument, "need equally many (>= 1) elements and scalars");
  Matrix<Scalar> d = zeros(group.field(), group.dim(), group.dim());
  for (std::size_t l = 0; l < hs.size(); ++l) d += alphas[l] * group[hs[l]];
  return d;
}

namespace {

template <typename Scalar>
bool all_contained(const IncrementalBasis<Scalar>& basis, const Subspace<Scalar>& v) {
  for (Index r = 0; r < v.dim(); ++r)
    if (!basis.contains(v.basis().row(r).transpose())) return false;
  return true;
}

template <typename Scalar>
Subspace<Scalar> sum_except(const std::vector<Subspace<Scalar>>& parts, std::size_t skip, Index n) {
  std::vector<Subspace<Scalar>> rest;
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (k != skip) rest.push_back(parts[k]);
  return subspace_sum<Scalar>(rest, n);
}

}  // namespace

template <typename Scalar>
std::vector<ElemRef> minimal_spanning_family(const MatrixGroup<Scalar>& group, const Subspace<Scalar>& u) {
  const Index n = group.dim();
  if (u.dim() == 0) throw Error(ErrorCode::ZeroVector, "cannot span from the zero subspace");
  std::vector<ElemRef> family;
  std::vector<Subspace<Scalar>> images;
  IncrementalBasis<Scalar> sum(n);
  for (ElemRef g = 0; g < group.order() && !sum.full(); ++g) {
    Subspace<Scalar> ug = apply(group[g], u);
    if (all_contained(sum, ug)) continue;
    for (Index r = 0; r < ug.dim(); ++r) sum.add(ug.basis().row(r).transpose());
    family.push_back(g);
    images.push_back(std::move(ug));
  }
  if (!sum.full())
    throw Error(ErrorCode::OrbitDoesNotSpan, "translates of U span only a " + std::to_string(sum.dim()) +
                                                 "-dimensional subspace of F^" + std::to_string(n));

  for (bool pruned = true; pruned;) {
    pruned = false;
    for (std::size_t i = 0; i < family.size() && family.size() > 1; ++i) {
      if (sum_except(images, i, n).dim() == n) {
        family.erase(family.begin() + static_cast<std::ptrdiff_t>(i));
        images.erase(images.begin() + static_cast<std::ptrdiff_t>(i));
        pruned = true;
        break;
      }
    }
  }
  return family;
}

template <typename Scalar>
std::pair<Matrix<Scalar>, std::vector<Vector<Scalar>>> dual_vectors(const MatrixGroup<Scalar>& group,
                                                                    const Matrix<Scalar>& y,
                                                                    const std::vector<ElemRef>& g_refs) {
  const Index n = group.dim();
  const auto t = static_cast<Index>(g_refs.size());
  const Subspace<Scalar> u = column_space(y);
  std::vector<Subspace<Scalar>> images;
  for (ElemRef g : g_refs) images.push_back(apply(group[g], u));

  Matrix<Scalar> w = zeros(group.field(), n, t);
  std::vector<Vector<Scalar>> hat_w;
  for (Index i = 0; i < t; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const Subspace<Scalar> others = sum_except(images, ii, n);
    const Subspace<Scalar> perp = orth_complement(group.field(), others);
    const Matrix<Scalar> yg = group[g_refs[ii]] * y;
    bool found = false;
    // (g_i Y)^t w is linear in w, so if no basis vector of the complement
    // works then none of its vectors does.
    for (Index r = 0; r < perp.dim() && !found; ++r) {
      Vector<Scalar> cand = perp.basis().row(r).transpose();
      Vector<Scalar> hw = yg.transpose() * cand;
      if (is_zero_matrix(hw)) continue;
      w.col(i) = cand;
      hat_w.push_back(std::move(hw));
      found = true;
    }
    if (!found)
      throw Error(ErrorCode::InternalInconsistency,
                  "no dual vector for family member " + std::to_string(i) + "; family is not minimal");
  }
  return {std::move(w), std::move(hat_w)};
}

template <typename Scalar>
Scalar beta(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert, std::size_t j, ElemRef s,
            const Vector<Scalar>& z) {
  const Vector<Scalar> c = cert.X * cert.family.hat_w.at(j);
  const Vector<Scalar> sz = group[s] * z;
  Scalar acc = group.field().zero();
  for (Index k = 0; k < c.size(); ++k) acc += c(k) * sz(k);
  return acc;
}

template <typename Scalar>
std::size_t count_survivors(const std::vector<Vector<Scalar>>& normals, const Vector<Scalar>& z) {
  std::size_t alive = 0;
  for (const auto& c : normals) {
    Scalar acc = c(0) * z(0);
    for (Index k = 1; k < c.size(); ++k) acc += c(k) * z(k);
    if (!is_zero(acc)) ++alive;
  }
  return alive;
}

namespace {

// survivors >= theta_F * total, exactly.
bool meets_theta(const FieldSpec& field, std::size_t survivors, std::size_t total) {
  if (field.is_rational()) return survivors == total;
  const std::uint64_t p = field.characteristic();
  return static_cast<std::uint64_t>(survivors) * p >= static_cast<std::uint64_t>(total) * (p - 1);
}

}  // namespace

template <typename Scalar>
ZChoice<Scalar> choose_z(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& normals, Index n,
                         std::uint64_t seed, std::size_t trials) {
  ZChoice<Scalar> best;
  best.total = normals.size();
  best.z = zero_vector(field, n);
  const FieldSpec spec = field.spec();

  if (spec.is_rational()) {
    best.method = "moment-curve";
    // Each nonzero normal vanishes at no more than n - 1 points of the curve.
    const std::size_t limit = normals.size() * static_cast<std::size_t>(std::max<Index>(n - 1, 1)) + 2;
    for (std::size_t c = 1; c <= limit; ++c) {
      Vector<Scalar> z(n);
      Scalar power = field.one();
      for (Index k = 0; k < n; ++k) {
        z(k) = power;
        power *= field.from_int(static_cast<std::int64_t>(c));
      }
      const std::size_t alive = count_survivors(normals, z);
      if (alive > best.survivors || c == 1) best = {z, alive, normals.size(), best.method};
      if (alive == normals.size()) return best;
    }
    throw Error(ErrorCode::BudgetExhausted, "no point of the moment curve avoids every hyperplane");
  }

  const std::uint64_t p = spec.characteristic();
  double space = 1;
  for (Index k = 0; k < n; ++k) space *= static_cast<double>(p);

  if (space <= static_cast<double>(kExhaustiveZLimit)) {
    best.method = "exhaustive";
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(n), 0);
    bool first = true;
    while (true) {
      Vector<Scalar> z(n);
      for (Index k = 0; k < n; ++k) z(k) = field.from_int(static_cast<std::int64_t>(digits[static_cast<std::size_t>(k)]));
      const std::size_t alive = count_survivors(normals, z);
      if (first || alive > best.survivors) {
        best.z = z;
        best.survivors = alive;
      }
      first = false;
      if (best.survivors == best.total) break;
      // Lexicographic counter, most significant coordinate first.
      Index k = n - 1;
      while (k >= 0 && ++digits[static_cast<std::size_t>(k)] == p) digits[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    if (!meets_theta(spec, best.survivors, best.total))
      throw Error(ErrorCode::BudgetExhausted, "exhaustive z search fell below the theta fraction");
    return best;
  }

  best.method = "random";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> residue(0, p - 1);
  const std::size_t budget = std::max<std::size_t>(trials, 1) * 100;
  for (std::size_t draw = 0; draw < budget; ++draw) {
    Vector<Scalar> z(n);
    for (Index k = 0; k < n; ++k) z(k) = field.from_int(static_cast<std::int64_t>(residue(rng)));
    const std::size_t alive = count_survivors(normals, z);
    if (draw == 0 || alive > best.survivors) {
      best.z = z;
      best.survivors = alive;
    }
    if (draw + 1 >= trials && meets_theta(spec, best.survivors, best.total)) return best;
  }
  throw Error(ErrorCode::BudgetExhausted, "no random z reached the theta fraction within " +
                                              std::to_string(budget) + " draws");
}

template <typename Scalar>
Vector<Scalar> spanning_tuple_identity(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert,
                                       std::size_t j, ElemRef s) {
  const ElemRef gj = cert.family.g_refs.at(j);
  Vector<Scalar> acc = zero_vector(group.field(), static_cast<Index>(cert.family.t()));
  for (std::size_t l = 0; l < cert.hs.size(); ++l) {
    const ElemRef idx = group.multiply(group.multiply(gj, cert.hs[l]), s);
    acc += cert.alphas[l] * cert.code.vectors.at(idx);
  }
  return acc;
}

namespace {

// Shared tail of every construction: factor D, build the dual family, pick z,
// lay out the code and the filtered matchings.
template <typename Scalar>
ConstructionCert<Scalar> run_pipeline(const MatrixGroup<Scalar>& group, ConstructionCert<Scalar> cert,
                                      std::uint64_t seed) {
  const Field<Scalar>& field = group.field();
  const Index n = group.dim();
  const std::size_t m = group.order();

  cert.seed = seed;
  cert.D = combine(group, cert.hs, cert.alphas);
  if (is_zero_matrix(cert.D)) throw Error(ErrorCode::ZeroMatrix, "the combination is the zero matrix");
  auto rf = rank_factorize(cert.D);
  cert.R = rf.rank;
  cert.Y = std::move(rf.Y);
  cert.X = std::move(rf.X);
  cert.t_lower = static_cast<std::size_t>((n + cert.R - 1) / cert.R);

  cert.family.U = column_space(cert.Y);
  cert.family.g_refs = minimal_spanning_family(group, cert.family.U);
  std::tie(cert.family.W, cert.family.hat_w) = dual_vectors(group, cert.Y, cert.family.g_refs);
  const std::size_t t = cert.family.t();

  std::vector<Vector<Scalar>> normals;
  normals.reserve(t * cert.selection.size());
  for (std::size_t j = 0; j < t; ++j) {
    const Vector<Scalar> c = cert.X * cert.family.hat_w[j];
    for (ElemRef s : cert.selection) normals.push_back(group[s].transpose() * c);
  }
  cert.prefilter_total = normals.size();
  ZChoice<Scalar> zc = choose_z(field, normals, n, seed);
  cert.z = std::move(zc.z);
  cert.z_search = zc.method;

  LdcInstance<Scalar>& code = cert.code;
  code.field = field.spec();
  code.t = t;
  code.q = cert.q;
  code.form = cert.mode == ConstructionMode::General ? CodeForm::General : CodeForm::Special2;
  const Matrix<Scalar> wt = cert.family.W.transpose();
  for (ElemRef s = 0; s < m; ++s) code.vectors.push_back(wt * (group[s] * cert.z));
  if (cert.mode == ConstructionMode::Lambda)
    for (ElemRef s = 0; s < m; ++s) code.vectors.push_back(*cert.lambda * code.vectors[s]);
  code.m = code.vectors.size();

  cert.beta_nonzero_count.assign(t, 0);
  for (std::size_t j = 0; j < t; ++j) {
    QMatching mt;
    mt.q = cert.q;
    const ElemRef gj = cert.family.g_refs[j];
    for (std::size_t k = 0; k < cert.selection.size(); ++k) {
      const Vector<Scalar>& c = normals[j * cert.selection.size() + k];
      if (count_survivors(std::vector<Vector<Scalar>>{c}, cert.z) == 0) continue;
      ++cert.beta_nonzero_count[j];
      const ElemRef s = cert.selection[k];
      std::vector<std::size_t> set;
      for (ElemRef h : cert.hs) set.push_back(group.multiply(group.multiply(gj, h), s));
      if (cert.mode == ConstructionMode::Lambda) set[1] += m;  // lambda a_{g_j s} lives in the second half
      mt.sets.push_back(std::move(set));
    }
    code.matchings.push_back(std::move(mt));
  }
  code.claimed_delta = cert.target_delta;
  cert.achieved_delta = achieved_delta(code);
  return cert;
}

// Starts s of the alternating edges (s, h s), (h^2 s, h^3 s), ... of each h-cycle.
template <typename Scalar>
std::vector<ElemRef> alternating_cycle_edges(const MatrixGroup<Scalar>& group, ElemRef h) {
  std::vector<ElemRef> starts;
  for (const auto& cycle : mult_cycles(group, h).cycles)
    for (std::size_t k = 0; k + 1 < cycle.size(); k += 2) starts.push_back(cycle[k]);
  std::sort(starts.begin(), starts.end());
  return starts;
}

}  // namespace

template <typename Scalar>
ConstructionCert<Scalar> build_q_ldc(const MatrixGroup<Scalar>& group, const std::vector<ElemRef>& hs,
                                     const std::vector<Scalar>& alphas, std::uint64_t seed) {
  std::vector<ElemRef> sorted = hs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidArgument, "the group elements h_1..h_q must be distinct");

  ConstructionCert<Scalar> cert;
  cert.mode = ConstructionMode::General;
  cert.hs = hs;
  for (const auto& a : alphas) cert.alphas.push_back(group.field().canonical(a));
  cert.q = hs.size();
  cert.target_delta = theta(group.field().spec()) / Rational(cert.q * cert.q);

  // Greedy disjoint right-orbit tuples {h_1 s, ..., h_q s}.
  std::vector<bool> used(group.order(), false);
  for (ElemRef s = 0; s < group.order(); ++s) {
    std::vector<ElemRef> tuple;
    for (ElemRef h : hs) tuple.push_back(group.multiply(h, s));
    if (std::any_of(tuple.begin(), tuple.end(), [&used](ElemRef x) { return used[x]; })) continue;
    for (ElemRef x : tuple) used[x] = true;
    cert.selection.push_back(s);
  }
  cert.greedy_bound_met = cert.selection.size() * cert.q * cert.q >= group.order();
  return run_pipeline(group, std::move(cert), seed);
}

template <typename Scalar>
ConstructionCert<Scalar> build_special_2ldc(const MatrixGroup<Scalar>& group, ElemRef h, std::uint64_t seed) {
  if (h == group.identity_pos() || rank_minus_identity(group, h) == 0)
    throw Error(ErrorCode::IdentityElement, "h is the identity, h - I = 0");
  const Field<Scalar>& field = group.field();
  ConstructionCert<Scalar> cert;
  cert.mode = ConstructionMode::Special2;
  cert.hs = {h, group.identity_pos()};
  cert.alphas = {field.one(), -field.one()};
  cert.q = 2;
  cert.order_h = element_order(group, h);
  cert.target_delta = theta(field.spec()) * gamma(cert.order_h) / 2;
  cert.selection = alternating_cycle_edges(group, h);
  return run_pipeline(group, std::move(cert), seed);
}

template <typename Scalar>
ConstructionCert<Scalar> lambda_variant(const MatrixGroup<Scalar>& group, ElemRef h, const Scalar& lambda,
                                        std::uint64_t seed) {
  const Field<Scalar>& field = group.field();
  const Scalar lam = field.canonical(lambda);
  if (is_zero(lam)) throw Error(ErrorCode::InvalidArgument, "lambda must be nonzero");
  if (equal(group[h], lam * identity(field, group.dim())))
    throw Error(ErrorCode::ScalarMultipleOfIdentity, "h equals lambda I");
  ConstructionCert<Scalar> cert;
  cert.mode = ConstructionMode::Lambda;
  cert.hs = {h, group.identity_pos()};
  cert.alphas = {field.one(), -lam};
  cert.lambda = lam;
  cert.q = 2;
  cert.order_h = element_order(group, h);
  cert.target_delta = theta(field.spec()) * gamma(cert.order_h) / 4;
  cert.selection = alternating_cycle_edges(group, h);
  return run_pipeline(group, std::move(cert), seed);
}

template <typename Scalar>
bool orbit_projection_check(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert) {
  const std::size_t m = group.order();
  const std::size_t expected = cert.mode == ConstructionMode::Lambda ? 2 * m : m;
  if (cert.code.vectors.size() != expected) return false;
  const Matrix<Scalar> wt = cert.family.W.transpose();
  for (ElemRef s = 0; s < m; ++s) {
    const Vector<Scalar> proj = wt * (group[s] * cert.z);
    if (!equal(cert.code.vectors[s], proj)) return false;
    if (cert.mode == ConstructionMode::Lambda && !equal(cert.code.vectors[m + s], (*cert.lambda * proj).eval()))
      return false;
  }
  return true;
}

template <typename Scalar>
CertReport check_certificate(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert) {
  const Field<Scalar>& field = group.field();
  const Index n = group.dim();
  const std::size_t m = group.order();
  const std::size_t t = cert.family.t();
  CertReport report;
  auto check = [&report](const std::string& name) -> CertCheck& {
    report.checks.push_back(CertCheck{name, true, {}});
    return report.checks.back();
  };
  auto fail = [](CertCheck& c, const std::string& why) {
    c.passed = false;
    if (c.failures.size() < 20) c.failures.push_back(why);
  };

  {
    CertCheck& c = check("shapes");
    if (cert.hs.size() != cert.alphas.size() || cert.hs.empty()) fail(c, "hs/alphas length mismatch");
    for (ElemRef h : cert.hs)
      if (h >= m) fail(c, "element index " + std::to_string(h) + " out of range");
    for (ElemRef g : cert.family.g_refs)
      if (g >= m) fail(c, "family index " + std::to_string(g) + " out of range");
    if (cert.D.rows() != n || cert.D.cols() != n) fail(c, "D is not n x n");
    if (cert.Y.rows() != n || cert.X.rows() != n || cert.Y.cols() != cert.R || cert.X.cols() != cert.R)
      fail(c, "Y and X must be n x R");
    if (cert.family.W.rows() != n || static_cast<std::size_t>(cert.family.W.cols()) != t ||
        cert.family.hat_w.size() != t)
      fail(c, "W must be n x t with t hat_w vectors");
    if (cert.z.size() != n) fail(c, "z must lie in F^n");
    if (cert.mode == ConstructionMode::Lambda && !cert.lambda) fail(c, "lambda mode without lambda");
    if (cert.mode != ConstructionMode::General &&
        (cert.hs.size() != 2 || (cert.hs.size() == 2 && cert.hs[1] != group.identity_pos())))
      fail(c, "special modes combine h with the identity");
    for (ElemRef s : cert.selection)
      if (s >= m) fail(c, "selection index " + std::to_string(s) + " out of range");
    for (const auto& hw : cert.family.hat_w)
      if (hw.size() != cert.R) fail(c, "hat_w vectors must lie in F^R");
    if (cert.beta_nonzero_count.size() != t) fail(c, "one beta count per coordinate expected");
    const std::size_t expected = cert.mode == ConstructionMode::Lambda ? 2 * m : m;
    if (cert.code.m != expected || cert.code.t != t || cert.code.vectors.size() != expected)
      fail(c, "code length/dimension disagree with the group");
    for (std::size_t k = 0; k < cert.code.vectors.size(); ++k)
      if (cert.code.vectors[k].size() != static_cast<Index>(t))
        fail(c, "code vector " + std::to_string(k) + " does not lie in F^t");
    if (cert.code.matchings.size() != t) fail(c, "one matching per coordinate expected");
    if (!c.passed) {
      report.passed = false;
      return report;
    }
  }
  {
    CertCheck& c = check("combination");
    if (!equal(cert.D, combine(group, cert.hs, cert.alphas))) fail(c, "D != sum alpha_l h_l");
    if (cert.mode != ConstructionMode::General) {
      Matrix<Scalar> expect = group[cert.hs[0]] - (cert.lambda ? *cert.lambda : field.one()) * identity(field, n);
      if (!equal(cert.D, expect)) fail(c, "D is not h - lambda I");
    }
  }
  {
    CertCheck& c = check("rank_factorization");
    if (!equal(cert.D, (cert.Y * cert.X.transpose()).eval())) fail(c, "D != Y X^t");
    const Index rd = rank(cert.D);
    if (rd != cert.R || rank(cert.Y) != cert.R || rank(cert.X) != cert.R)
      fail(c, "ranks of D, Y, X are not all R = " + std::to_string(cert.R));
    if (cert.R <= 0) fail(c, "R must be positive");
  }
  const Subspace<Scalar> u = column_space(cert.Y);
  std::vector<Subspace<Scalar>> images;
  for (ElemRef g : cert.family.g_refs) images.push_back(apply(group[g], u));
  {
    CertCheck& c = check("spanning_sum");
    if (subspace_sum<Scalar>(images, n).dim() != n) fail(c, "sum of U^{g_j} is not F^n");
    if (cert.R > 0 && t * static_cast<std::size_t>(cert.R) < static_cast<std::size_t>(n))
      fail(c, "t < ceil(n / R)");
  }
  {
    CertCheck& c = check("minimality");
    for (std::size_t i = 0; i < t; ++i) {
      std::vector<Subspace<Scalar>> rest;
      for (std::size_t k = 0; k < t; ++k)
        if (k != i) rest.push_back(images[k]);
      if (subspace_contains(subspace_sum<Scalar>(rest, n), images[i]))
        fail(c, "U^{g_" + std::to_string(i) + "} lies in the sum of the others");
    }
  }
  {
    CertCheck& c = check("dual_vectors");
    for (std::size_t i = 0; i < t; ++i) {
      const Vector<Scalar> wi = cert.family.W.col(static_cast<Index>(i));
      for (std::size_t j = 0; j < t; ++j) {
        const Vector<Scalar> prod = (group[cert.family.g_refs[j]] * cert.Y).transpose() * wi;
        const bool orth = is_zero_matrix(prod);
        if (orth != (i != j))
          fail(c, "w_" + std::to_string(i) + (orth ? " is orthogonal to U^{g_" : " is not orthogonal to U^{g_") +
                      std::to_string(j) + "}");
      }
      const Vector<Scalar> hw = (group[cert.family.g_refs[i]] * cert.Y).transpose() * wi;
      if (!equal(hw, cert.family.hat_w[i]) || is_zero_matrix(hw))
        fail(c, "hat_w_" + std::to_string(i) + " is not the nonzero vector (g_i Y)^t w_i");
    }
  }
  {
    CertCheck& c = check("rank_one_products");
    for (std::size_t j = 0; j < t; ++j) {
      const Matrix<Scalar> lhs = cert.family.W.transpose() * (group[cert.family.g_refs[j]] * cert.Y);
      Matrix<Scalar> rhs = zeros(field, static_cast<Index>(t), cert.R);
      rhs.row(static_cast<Index>(j)) = cert.family.hat_w[j].transpose();
      if (!equal(lhs, rhs)) fail(c, "W^t g_j Y != e_j hat_w_j^t for j = " + std::to_string(j));
    }
  }
  {
    CertCheck& c = check("orbit_projection");
    const Matrix<Scalar> wt = cert.family.W.transpose();
    for (ElemRef s = 0; s < m; ++s) {
      const Vector<Scalar> proj = wt * (group[s] * cert.z);
      if (!equal(cert.code.vectors[s], proj)) fail(c, "a_" + std::to_string(s) + " != W^t s z");
      if (cert.mode == ConstructionMode::Lambda && !equal(cert.code.vectors[m + s], (*cert.lambda * proj).eval()))
        fail(c, "a_" + std::to_string(m + s) + " != lambda W^t s z");
    }
  }
  {
    CertCheck& c = check("tuple_identities");
    for (std::size_t j = 0; j < t; ++j) {
      for (ElemRef s = 0; s < m; ++s) {
        const Vector<Scalar> lhs = spanning_tuple_identity(group, cert, j, s);
        const Vector<Scalar> rhs = beta(group, cert, j, s, cert.z) * unit_vector(field, static_cast<Index>(t),
                                                                                  static_cast<Index>(j));
        if (!equal(lhs, rhs))
          fail(c, "sum_l alpha_l a_{g_j h_l s} != beta e_j at j = " + std::to_string(j) + ", s = " +
                      std::to_string(s));
      }
    }
  }
  {
    CertCheck& c = check("z_survival");
    std::size_t survivors = 0;
    for (std::size_t j = 0; j < t; ++j) {
      std::size_t alive = 0;
      for (ElemRef s : cert.selection)
        if (!is_zero(beta(group, cert, j, s, cert.z))) ++alive;
      if (j < cert.beta_nonzero_count.size() && alive != cert.beta_nonzero_count[j])
        fail(c, "recorded beta count differs at coordinate " + std::to_string(j));
      survivors += alive;
    }
    if (!meets_theta(field.spec(), survivors, t * cert.selection.size()))
      fail(c, std::to_string(survivors) + " of " + std::to_string(t * cert.selection.size()) +
                  " tuples survive, below the theta fraction");
  }
  report.ldc = verify(field, cert.code);
  {
    CertCheck& c = check("ldc");
    if (!report.ldc.passed) {
      for (const auto& p : report.ldc.shape_problems) fail(c, p);
      for (const auto& cr : report.ldc.coordinates)
        for (const auto& p : cr.problems) fail(c, p);
      if (!report.ldc.meets_claim) fail(c, "achieved delta below claimed delta");
    }
  }
  {
    CertCheck& c = check("delta_target");
    if (achieved_delta(cert.code) != cert.achieved_delta) fail(c, "recorded achieved delta is stale");
    if (cert.achieved_delta < cert.target_delta)
      fail(c, "achieved delta " + to_string(cert.achieved_delta) + " < target " + to_string(cert.target_delta));
  }
  report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const CertCheck& c) { return c.passed; });
  return report;
}

#define REP2LDC_INSTANTIATE_CONSTRUCT(S)                                                                        \
  template Matrix<S> combine<S>(const MatrixGroup<S>&, const std::vector<ElemRef>&, const std::vector<S>&);     \
  template std::vector<ElemRef> minimal_spanning_family<S>(const MatrixGroup<S>&, const Subspace<S>&);          \
  template std::pair<Matrix<S>, std::vector<Vector<S>>> dual_vectors<S>(const MatrixGroup<S>&, const Matrix<S>&, \
                                                                        const std::vector<ElemRef>&);           \
  template S beta<S>(const MatrixGroup<S>&, const ConstructionCert<S>&, std::size_t, ElemRef, const Vector<S>&); \
  template ZChoice<S> choose_z<S>(const Field<S>&, const std::vector<Vector<S>>&, Index, std::uint64_t,          \
                                  std::size_t);                                                                 \
  template std::size_t count_survivors<S>(const std::vector<Vector<S>>&, const Vector<S>&);                     \
  template Vector<S> spanning_tuple_identity<S>(const MatrixGroup<S>&, const ConstructionCert<S>&, std::size_t,  \
                                                ElemRef);                                                       \
  template ConstructionCert<S> build_q_ldc<S>(const MatrixGroup<S>&, const std::vector<ElemRef>&,               \
                                              const std::vector<S>&, std::uint64_t);                            \
  template ConstructionCert<S> build_special_2ldc<S>(const MatrixGroup<S>&, ElemRef, std::uint64_t);            \
  template ConstructionCert<S> lambda_variant<S>(const MatrixGroup<S>&, ElemRef, const S&, std::uint64_t);      \
  template bool orbit_projection_check<S>(const MatrixGroup<S>&, const ConstructionCert<S>&);                   \
  template CertReport check_certificate<S>(const MatrixGroup<S>&, const ConstructionCert<S>&);

REP2LDC_INSTANTIATE_CONSTRUCT(Zp)
REP2LDC_INSTANTIATE_CONSTRUCT(Rational)

}  // namespace rep2ldc
