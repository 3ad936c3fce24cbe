#pragma once

// Rank-separation bounds and the entropy argument behind m >= 2^{2 delta t}.
//
// Every inequality that mixes log2 with rationals is decided exactly:
// log2(N / D) >= a / b  <=>  N^b >= 2^a D^b. Floats are only used for
// display and as a fast path when the two sides are far apart.

#include <cstddef>
#include <vector>

#include "rep2ldc/group.hpp"
#include "rep2ldc/ldc.hpp"

namespace rep2ldc {

/// 1 for Q, 1 - 1/p for GF(p).
Rational theta(const FieldSpec& field);

/// 1 for even ord, 1 - 1/ord for odd ord (0 at ord = 1).
Rational gamma(std::size_t ord);

/// Exact test of log2(num / den) >= rhs for positive num, den.
bool log2_ratio_at_least(const BigInt& num, const BigInt& den, const Rational& rhs);

/// Exact test of k * log2(base) >= rhs.
bool log2_power_at_least(const BigInt& base, std::size_t k, const Rational& rhs);

struct BoundReport {
  ElemRef h = 0;
  std::size_t order = 0;
  Rational gamma = 0;
  Rational theta = 0;
  Index n = 0;
  std::size_t group_size = 0;
  Rational numerator = 0;   // theta * gamma * n
  double lower_bound = 0;   // numerator / log2 |G|
  Index actual_rank = 0;
  bool satisfied = false;          // rank >= theta gamma n / log2 |G|
  bool uniform_satisfied = false;  // rank >= n / (3 log2 |G|)
};

/// One report per h != I.
template <typename Scalar>
std::vector<BoundReport> check_rank_separation(const MatrixGroup<Scalar>& group);

struct LambdaBound {
  Rational numerator = 0;  // theta * gamma * n
  double value = 0;        // numerator / (2 log2(2 |G|))
};

LambdaBound lambda_bound(Index n, std::size_t group_size, const Rational& theta, const Rational& gamma);

/// Exact test of rank >= theta gamma n / (2 log2(2 |G|)).
bool satisfies_lambda_bound(Index rank, Index n, std::size_t group_size, const Rational& theta,
                            const Rational& gamma);

/// Shannon entropy in bits; zero weights contribute nothing.
/// Throws NotADistribution unless the weights are non-negative and sum to 1.
double entropy(const std::vector<Rational>& weights);

/// Entropy of the empirical distribution given by occurrence counts.
double entropy_of_counts(const std::vector<std::size_t>& counts);

struct MatchEntropyResult {
  double entropy = 0;  // H(f(X)), X uniform on [t]
  Rational bound = 0;  // 2 s / t
  bool passed = false;
};

/// Checks H(f(X)) >= 2s/t for a matching of s pairs separated by f.
/// Throws PairNotSeparated if some matched pair has f(j1) = f(j2).
MatchEntropyResult match_entropy_check(std::size_t t, const QMatching& matching,
                                       const std::vector<std::size_t>& f);

struct EntropyAudit {
  std::size_t m = 0;
  std::size_t t = 0;
  double entropy = 0;  // H(X), X uniform over the code sequence
  double log2_m = 0;
  std::vector<double> chain_terms;                    // H(X_i | X_1..X_{i-1})
  std::vector<Rational> matching_bound_terms;         // 2 |M_i| / m
  std::vector<std::vector<std::size_t>> prefix_classes;  // |J_i^b| per coordinate
  std::vector<bool> chain_term_ok;
  Rational two_delta_t = 0;  // 2 sum |M_i| / m

  bool chain_identity_ok = false;  // sum of chain terms = H(X) within 1e-12
  bool entropy_upper_ok = false;   // H(X) <= log2 m
  bool entropy_bound_ok = false;   // H(X) >= 2 delta t
  bool length_bound_ok = false;    // log2 m >= 2 delta t
  bool length_bound_tight = false;  // m = 2^{2 delta t}
  bool passed = false;
};

/// Audits a special-form code through the prefix-class chain rule.
/// Throws MatchingCrossesPrefixClass when a matched pair differs before its coordinate.
EntropyAudit entropy_audit_labels(const std::vector<std::vector<std::size_t>>& labels,
                                  const std::vector<QMatching>& matchings);

template <typename Scalar>
EntropyAudit entropy_audit(const LdcInstance<Scalar>& code);

struct FixedSpaceAverage {
  Rational average = 0;  // (1/|G|) sum_h dim C(h)
  bool passed = false;   // average <= n / 2
  bool applicable = false;  // group certified irreducible
};

template <typename Scalar>
FixedSpaceAverage avg_fixed_space(const MatrixGroup<Scalar>& group);

}  // namespace rep2ldc
