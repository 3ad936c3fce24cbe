#pragma once

// From a low-rank combination D = sum_l alpha_l h_l of group elements to a
// certified linear LDC.
//
//   D = Y X^t                     rank factorization, U = colspan(Y)
//   g_1..g_t                      minimal family with sum_j U^{g_j} = F^n
//   w_i                           w_i orthogonal to U^{g_j} exactly when i != j
//   W^t (g_j Y) = e_j hat_w_j^t   hat_w_j = (g_j Y)^t w_j != 0
//   a_s = W^t s z                 code vector at group element s
//   sum_l alpha_l a_{g_j h_l s} = beta_{j,s}(z) e_j,  beta_{j,s}(z) = <X hat_w_j, s z>
//
// so every tuple {g_j h_l s} with beta_{j,s}(z) != 0 recovers e_j.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rep2ldc/group.hpp"
#include "rep2ldc/ldc.hpp"

namespace rep2ldc {

template <typename Scalar>
struct SpanningFamily {
  std::vector<ElemRef> g_refs;
  Subspace<Scalar> U;
  Matrix<Scalar> W;                  // n x t, columns w_1..w_t
  std::vector<Vector<Scalar>> hat_w;  // each in F^R

  std::size_t t() const { return g_refs.size(); }
};

enum class ConstructionMode { General, Special2, Lambda };

const char* to_string(ConstructionMode mode);

template <typename Scalar>
struct ConstructionCert {
  ConstructionMode mode = ConstructionMode::General;
  std::vector<ElemRef> hs;
  std::vector<Scalar> alphas;
  std::optional<Scalar> lambda;
  std::size_t q = 2;
  std::size_t order_h = 0;  // ord(h) in the special and lambda modes

  Matrix<Scalar> D;
  Index R = 0;
  Matrix<Scalar> Y;
  Matrix<Scalar> X;
  SpanningFamily<Scalar> family;
  std::size_t t_lower = 0;  // ceil(n / R)

  /// Right translates s whose tuples {h_l s} form the unfiltered matching
  /// (the same for every coordinate after left translation by g_j).
  std::vector<ElemRef> selection;
  bool greedy_bound_met = true;  // |selection| * q^2 >= |G|

  Vector<Scalar> z;
  std::uint64_t seed = 0;
  std::string z_search;
  std::size_t prefilter_total = 0;
  std::vector<std::size_t> beta_nonzero_count;  // per coordinate, over the selection

  LdcInstance<Scalar> code;
  Rational achieved_delta = 0;
  Rational target_delta = 0;
};

template <typename Scalar>
Matrix<Scalar> combine(const MatrixGroup<Scalar>& group, const std::vector<ElemRef>& hs,
                       const std::vector<Scalar>& alphas);

/// Greedy scan in canonical order, then pruning of redundant translates.
/// Throws OrbitDoesNotSpan when the translates of U do not span F^n.
template <typename Scalar>
std::vector<ElemRef> minimal_spanning_family(const MatrixGroup<Scalar>& group, const Subspace<Scalar>& u);

/// Builds w_1..w_t and hat_w_1..hat_w_t for a minimal spanning family of colspan(Y).
template <typename Scalar>
std::pair<Matrix<Scalar>, std::vector<Vector<Scalar>>> dual_vectors(const MatrixGroup<Scalar>& group,
                                                                    const Matrix<Scalar>& y,
                                                                    const std::vector<ElemRef>& g_refs);

/// beta_{j,s}(z) = <X hat_w_j, s z>.
template <typename Scalar>
Scalar beta(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert, std::size_t j, ElemRef s,
            const Vector<Scalar>& z);

template <typename Scalar>
struct ZChoice {
  Vector<Scalar> z;
  std::size_t survivors = 0;
  std::size_t total = 0;
  std::string method;  // "exhaustive", "random" or "moment-curve"
};

inline constexpr std::uint64_t kExhaustiveZLimit = 100'000;

/// Picks z avoiding as many hyperplanes <c, z> = 0 as possible, with at
/// least a theta_F fraction surviving. Exhaustive (first maximiser in
/// lexicographic order) when |F|^n <= 1e5, seeded random draws otherwise;
/// over Q walks the moment curve (1, c, c^2, ...) until every normal survives.
template <typename Scalar>
ZChoice<Scalar> choose_z(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& normals, Index n,
                         std::uint64_t seed, std::size_t trials = 64);

/// Number of normals c with <c, z> != 0.
template <typename Scalar>
std::size_t count_survivors(const std::vector<Vector<Scalar>>& normals, const Vector<Scalar>& z);

/// sum_l alpha_l a_{g_j h_l s}; equals beta_{j,s}(z) e_j for a valid certificate.
template <typename Scalar>
Vector<Scalar> spanning_tuple_identity(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert,
                                       std::size_t j, ElemRef s);

/// General q-query code from sum_l alpha_l h_l; target delta = theta / q^2.
template <typename Scalar>
ConstructionCert<Scalar> build_q_ldc(const MatrixGroup<Scalar>& group, const std::vector<ElemRef>& hs,
                                     const std::vector<Scalar>& alphas, std::uint64_t seed);

/// Special 2-query code from h - I; target delta = theta * gamma_h / 2.
/// Throws IdentityElement when h = I.
template <typename Scalar>
ConstructionCert<Scalar> build_special_2ldc(const MatrixGroup<Scalar>& group, ElemRef h, std::uint64_t seed);

/// Special 2-query code of length 2|G| from h - lambda I, built from A and
/// lambda A; target delta = theta * gamma_h / 4.
/// Throws ScalarMultipleOfIdentity when h = lambda I.
template <typename Scalar>
ConstructionCert<Scalar> lambda_variant(const MatrixGroup<Scalar>& group, ElemRef h, const Scalar& lambda,
                                        std::uint64_t seed);

/// a_s = W^t s z for every s (and lambda W^t s z on the second half).
template <typename Scalar>
bool orbit_projection_check(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert);

struct CertCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

struct CertReport {
  std::vector<CertCheck> checks;
  VerificationReport ldc;
  bool passed = false;
};

/// Re-derives every invariant of the certificate from the group alone.
template <typename Scalar>
CertReport check_certificate(const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert);

}  // namespace rep2ldc
