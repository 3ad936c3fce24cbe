#include "rep2ldc/bounds.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace rep2ldc {

namespace {

double log2_big(const BigInt& x) {
  if (x <= 0) throw Error(ErrorCode::InvalidArgument, "log2 of a non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(x);
  if (bits < 53) return std::log2(x.convert_to<double>());
  BigInt top = x >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// A product of powers prod base^exp, divided by another such product.
// Keeps log2 in floating point and only expands to big integers when the
// float estimate is too close to the threshold to be trusted.
struct PowerRatio {
  std::vector<std::pair<std::size_t, std::size_t>> num;
  std::vector<std::pair<std::size_t, std::size_t>> den;

  static double log2_of(const std::vector<std::pair<std::size_t, std::size_t>>& factors) {
    double s = 0;
    for (auto [base, exp] : factors) s += static_cast<double>(exp) * std::log2(static_cast<double>(base));
    return s;
  }
  static BigInt value_of(const std::vector<std::pair<std::size_t, std::size_t>>& factors) {
    BigInt v = 1;
    for (auto [base, exp] : factors) v *= boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
    return v;
  }

  double log2() const { return log2_of(num) - log2_of(den); }

  bool at_least(const Rational& rhs) const {
    const double est = log2();
    const double target = to_double(rhs);
    if (std::abs(est - target) > 1e-6 * (1.0 + std::abs(target))) return est >= target;
    return log2_ratio_at_least(value_of(num), value_of(den), rhs);
  }
};

}  // namespace

Rational theta(const FieldSpec& field) { return field.theta(); }

Rational gamma(std::size_t ord) {
  if (ord == 0) throw Error(ErrorCode::InvalidArgument, "element order must be positive");
  if (ord % 2 == 0) return Rational(1);
  return Rational(1) - Rational(1, ord);
}

bool log2_ratio_at_least(const BigInt& num, const BigInt& den, const Rational& rhs) {
  if (num <= 0 || den <= 0) throw Error(ErrorCode::InvalidArgument, "log2 of a non-positive ratio");
  const double est = log2_big(num) - log2_big(den);
  const double target = to_double(rhs);
  if (std::abs(est - target) > 1e-6 * (1.0 + std::abs(target))) return est >= target;

  // num^b >= 2^a den^b with rhs = a / b, b > 0.
  const BigInt a = numerator(rhs);
  const BigInt b = denominator(rhs);
  const auto bu = b.convert_to<unsigned>();
  BigInt lhs = boost::multiprecision::pow(num, bu);
  BigInt right = boost::multiprecision::pow(den, bu);
  if (a >= 0)
    right <<= a.convert_to<unsigned>();
  else
    lhs <<= static_cast<unsigned>((-a).convert_to<unsigned>());
  return lhs >= right;
}

bool log2_power_at_least(const BigInt& base, std::size_t k, const Rational& rhs) {
  if (k == 0) return rhs <= 0;
  const double est = static_cast<double>(k) * log2_big(base);
  const double target = to_double(rhs);
  if (std::abs(est - target) > 1e-6 * (1.0 + std::abs(target))) return est >= target;
  return log2_ratio_at_least(boost::multiprecision::pow(base, static_cast<unsigned>(k)), BigInt(1), rhs);
}

template <typename Scalar>
std::vector<BoundReport> check_rank_separation(const MatrixGroup<Scalar>& group) {
  std::vector<BoundReport> out;
  const Rational th = theta(group.field().spec());
  const std::size_t m = group.order();
  for (ElemRef h = 0; h < m; ++h) {
    const Index r = rank_minus_identity(group, h);
    if (r == 0) continue;
    BoundReport rep;
    rep.h = h;
    rep.order = element_order(group, h);
    rep.gamma = gamma(rep.order);
    rep.theta = th;
    rep.n = group.dim();
    rep.group_size = m;
    rep.numerator = th * rep.gamma * Rational(rep.n);
    rep.lower_bound = to_double(rep.numerator) / std::log2(static_cast<double>(m));
    rep.actual_rank = r;
    rep.satisfied = log2_power_at_least(BigInt(m), static_cast<std::size_t>(r), rep.numerator);
    rep.uniform_satisfied = log2_power_at_least(BigInt(m), 3 * static_cast<std::size_t>(r), Rational(rep.n));
    out.push_back(std::move(rep));
  }
  return out;
}

LambdaBound lambda_bound(Index n, std::size_t group_size, const Rational& theta_f, const Rational& gamma_h) {
  LambdaBound b;
  b.numerator = theta_f * gamma_h * Rational(n);
  if (n == 0) return b;
  b.value = to_double(b.numerator) / (2.0 * std::log2(2.0 * static_cast<double>(group_size)));
  return b;
}

bool satisfies_lambda_bound(Index rank, Index n, std::size_t group_size, const Rational& theta_f,
                            const Rational& gamma_h) {
  const Rational numer = theta_f * gamma_h * Rational(n);
  return log2_power_at_least(BigInt(2 * group_size), 2 * static_cast<std::size_t>(rank), numer);
}

double entropy(const std::vector<Rational>& weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error(ErrorCode::NotADistribution, "negative weight");
    total += w;
  }
  if (total != 1) throw Error(ErrorCode::NotADistribution, "weights sum to " + to_string(total));
  double h = 0;
  for (const auto& w : weights) {
    if (w == 0) continue;
    const double p = to_double(w);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy_of_counts(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error(ErrorCode::NotADistribution, "no mass");
  double h = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

MatchEntropyResult match_entropy_check(std::size_t t, const QMatching& matching, const std::vector<std::size_t>& f) {
  if (f.size() != t) throw Error(ErrorCode::DimensionMismatch, "f must be defined on all of [t]");
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "t must be positive");
  for (const auto& pair : matching.sets) {
    if (pair.size() != 2 || pair[0] >= t || pair[1] >= t)
      throw Error(ErrorCode::InvalidArgument, "matching must consist of pairs inside [t]");
    if (f[pair[0]] == f[pair[1]])
      throw Error(ErrorCode::PairNotSeparated,
                  "f agrees on {" + std::to_string(pair[0]) + ", " + std::to_string(pair[1]) + "}");
  }
  std::map<std::size_t, std::size_t> counts;
  for (auto v : f) ++counts[v];

  MatchEntropyResult out;
  std::vector<std::size_t> cs;
  PowerRatio ratio;  // t * H(f(X)) = log2(t^t / prod c^c)
  ratio.num.emplace_back(t, t);
  for (auto [_, c] : counts) {
    cs.push_back(c);
    ratio.den.emplace_back(c, c);
  }
  out.entropy = entropy_of_counts(cs);
  out.bound = Rational(2 * matching.size(), t);
  out.passed = ratio.at_least(Rational(2 * matching.size()));
  return out;
}

EntropyAudit entropy_audit_labels(const std::vector<std::vector<std::size_t>>& labels,
                                  const std::vector<QMatching>& matchings) {
  EntropyAudit audit;
  audit.m = labels.size();
  audit.t = matchings.size();
  if (audit.m == 0) throw Error(ErrorCode::InvalidArgument, "empty code");
  for (const auto& row : labels)
    if (row.size() != audit.t) throw Error(ErrorCode::DimensionMismatch, "label row length != t");

  const std::size_t m = audit.m;
  std::vector<std::size_t> cls(m, 0);
  std::size_t num_classes = 1;
  std::size_t total_matched = 0;
  double chain_sum = 0;
  bool chain_all_ok = true;

  for (std::size_t i = 0; i < audit.t; ++i) {
    std::vector<std::size_t> class_size(num_classes, 0);
    for (auto c : cls) ++class_size[c];
    audit.prefix_classes.push_back(class_size);

    std::vector<std::size_t> class_matched(num_classes, 0);
    for (const auto& pair : matchings[i].sets) {
      if (pair.size() != 2 || pair[0] >= m || pair[1] >= m)
        throw Error(ErrorCode::InvalidArgument, "entropy audit needs pairs inside [m]");
      if (cls[pair[0]] != cls[pair[1]])
        throw Error(ErrorCode::MatchingCrossesPrefixClass,
                    "coordinate " + std::to_string(i) + ": pair {" + std::to_string(pair[0]) + ", " +
                        std::to_string(pair[1]) + "} differs before coordinate " + std::to_string(i));
      ++class_matched[cls[pair[0]]];
    }
    total_matched += matchings[i].size();

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell;  // (class, value) -> count
    for (std::size_t j = 0; j < m; ++j) ++cell[{cls[j], labels[j][i]}];

    // m * H(X_i | prefix) = log2(prod_b |J_b|^|J_b| / prod c^c); each class
    // alone must also meet its own matching bound.
    PowerRatio whole;
    std::vector<PowerRatio> per_class(num_classes);
    for (std::size_t b = 0; b < num_classes; ++b) {
      whole.num.emplace_back(class_size[b], class_size[b]);
      per_class[b].num.emplace_back(class_size[b], class_size[b]);
    }
    for (const auto& [key, c] : cell) {
      whole.den.emplace_back(c, c);
      per_class[key.first].den.emplace_back(c, c);
    }
    const double term = whole.log2() / static_cast<double>(m);
    audit.chain_terms.push_back(term);
    chain_sum += term;
    audit.matching_bound_terms.push_back(Rational(2 * matchings[i].size(), m));

    bool ok = whole.at_least(Rational(2 * matchings[i].size()));
    for (std::size_t b = 0; b < num_classes; ++b)
      ok = ok && per_class[b].at_least(Rational(2 * class_matched[b]));
    audit.chain_term_ok.push_back(ok);
    chain_all_ok = chain_all_ok && ok;

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> next_id;
    for (const auto& [key, _] : cell) next_id.emplace(key, next_id.size());
    for (std::size_t j = 0; j < m; ++j) cls[j] = next_id.at({cls[j], labels[j][i]});
    num_classes = next_id.size();
  }

  std::vector<std::size_t> final_counts(num_classes, 0);
  for (auto c : cls) ++final_counts[c];
  PowerRatio whole;  // m * H(X)
  whole.num.emplace_back(m, m);
  for (auto c : final_counts) whole.den.emplace_back(c, c);

  audit.entropy = entropy_of_counts(final_counts);
  audit.log2_m = std::log2(static_cast<double>(m));
  audit.two_delta_t = Rational(2 * total_matched, m);
  audit.chain_identity_ok = std::abs(chain_sum - audit.entropy) <= 1e-12;
  audit.entropy_upper_ok = num_classes <= m && audit.entropy <= audit.log2_m + 1e-12;
  audit.entropy_bound_ok = whole.at_least(Rational(2 * total_matched));
  audit.length_bound_ok = log2_power_at_least(BigInt(m), 1, audit.two_delta_t);
  {
    const BigInt a = numerator(audit.two_delta_t);
    const auto b = denominator(audit.two_delta_t).convert_to<unsigned>();
    audit.length_bound_tight = boost::multiprecision::pow(BigInt(m), b) == (BigInt(1) << a.convert_to<unsigned>());
  }
  audit.passed = chain_all_ok && audit.chain_identity_ok && audit.entropy_upper_ok && audit.entropy_bound_ok &&
                 audit.length_bound_ok;
  return audit;
}

template <typename Scalar>
EntropyAudit entropy_audit(const LdcInstance<Scalar>& code) {
  if (code.form != CodeForm::Special2)
    throw Error(ErrorCode::InvalidArgument, "entropy audit applies to special-form codes only");
  std::vector<std::vector<std::size_t>> labels(code.vectors.size(), std::vector<std::size_t>(code.t));
  for (std::size_t i = 0; i < code.t; ++i) {
    std::map<std::string, std::size_t> ids;
    for (std::size_t j = 0; j < code.vectors.size(); ++j) {
      Matrix<Scalar> cell(1, 1);
      cell(0, 0) = code.vectors[j](static_cast<Index>(i));
      labels[j][i] = ids.emplace(element_key(cell), ids.size()).first->second;
    }
  }
  return entropy_audit_labels(labels, code.matchings);
}

template <typename Scalar>
FixedSpaceAverage avg_fixed_space(const MatrixGroup<Scalar>& group) {
  FixedSpaceAverage out;
  std::size_t total = 0;
  for (ElemRef h = 0; h < group.order(); ++h) total += static_cast<std::size_t>(fixed_space(group, h).dim());
  out.average = Rational(total, group.order());
  out.passed = 2 * total <= static_cast<std::size_t>(group.dim()) * group.order();
  out.applicable = burnside_irreducible(group);
  return out;
}

#define REP2LDC_INSTANTIATE_BOUNDS(S)                                                  \
  template std::vector<BoundReport> check_rank_separation<S>(const MatrixGroup<S>&);   \
  template EntropyAudit entropy_audit<S>(const LdcInstance<S>&);                       \
  template FixedSpaceAverage avg_fixed_space<S>(const MatrixGroup<S>&);

REP2LDC_INSTANTIATE_BOUNDS(Zp)
REP2LDC_INSTANTIATE_BOUNDS(Rational)

}  // namespace rep2ldc
