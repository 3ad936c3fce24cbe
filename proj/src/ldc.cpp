#include "rep2ldc/ldc.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "rep2ldc/group.hpp"
#include "rep2ldc/linalg.hpp"

namespace rep2ldc {

const char* to_string(CodeForm form) { return form == CodeForm::Special2 ? "special2" : "general"; }

template <typename Scalar>
std::optional<Scalar> special_pair_scalar(const Vector<Scalar>& a, const Vector<Scalar>& b, Index i) {
  if (a.size() != b.size() || i < 0 || i >= a.size()) return std::nullopt;
  Vector<Scalar> diff = a - b;
  for (Index k = 0; k < diff.size(); ++k)
    if (k != i && !is_zero(diff(k))) return std::nullopt;
  if (is_zero(diff(i))) return std::nullopt;
  return inverse(diff(i));
}

template <typename Scalar>
bool spans_unit_vector(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& vectors,
                       const std::vector<std::size_t>& set, Index i) {
  if (set.empty()) return false;
  const Index t = vectors.at(set.front()).size();
  Matrix<Scalar> rows(static_cast<Index>(set.size()), t);
  for (std::size_t k = 0; k < set.size(); ++k) rows.row(static_cast<Index>(k)) = vectors.at(set[k]).transpose();
  return Subspace<Scalar>(rows, t).contains(unit_vector(field, t, i));
}

template <typename Scalar>
Rational achieved_delta(const LdcInstance<Scalar>& code) {
  if (code.m == 0 || code.t == 0) return Rational(0);
  std::size_t total = 0;
  for (const auto& mt : code.matchings) total += mt.size();
  return Rational(total) / Rational(code.m * code.t);
}

template <typename Scalar>
VerificationReport verify(const Field<Scalar>& field, const LdcInstance<Scalar>& code) {
  return verify(field, code, code.form);
}

template <typename Scalar>
VerificationReport verify(const Field<Scalar>& field, const LdcInstance<Scalar>& code, CodeForm form) {
  VerificationReport report;
  report.form = form;
  report.claimed_delta = code.claimed_delta;
  const std::size_t q = form == CodeForm::Special2 ? 2 : code.q;

  auto shape = [&](const std::string& msg) {
    report.well_formed = false;
    report.shape_problems.push_back(msg);
  };
  if (code.vectors.size() != code.m)
    shape("expected " + std::to_string(code.m) + " vectors, found " + std::to_string(code.vectors.size()));
  for (std::size_t j = 0; j < code.vectors.size(); ++j)
    if (static_cast<std::size_t>(code.vectors[j].size()) != code.t)
      shape("vector " + std::to_string(j) + " does not have length t = " + std::to_string(code.t));
  if (code.matchings.size() != code.t)
    shape("expected " + std::to_string(code.t) + " matchings, found " + std::to_string(code.matchings.size()));
  if (form == CodeForm::Special2 && code.q != 2) shape("special form requires q = 2");
  if (q == 0) shape("q must be positive");
  if (!report.well_formed) return report;

  for (std::size_t i = 0; i < code.t; ++i) {
    CoordinateReport cr;
    cr.coordinate = i;
    const QMatching& mt = code.matchings[i];
    cr.matching_size = mt.size();
    std::vector<bool> used(code.m, false);
    for (std::size_t k = 0; k < mt.sets.size(); ++k) {
      const auto& set = mt.sets[k];
      const std::string where = "coordinate " + std::to_string(i) + " set " + std::to_string(k);
      if (set.size() != q) {
        cr.set_sizes_ok = false;
        cr.problems.push_back(where + ": size " + std::to_string(set.size()) + " != q");
      }
      bool in_range = true;
      for (std::size_t j : set) {
        if (j >= code.m) {
          in_range = false;
          continue;
        }
        if (used[j]) {
          cr.disjoint = false;
          cr.problems.push_back(where + ": index " + std::to_string(j) + " already used");
        }
        used[j] = true;
      }
      if (!in_range) {
        cr.indices_in_range = false;
        cr.problems.push_back(where + ": index out of range");
        continue;
      }
      bool spans = false;
      if (form == CodeForm::Special2) {
        spans = set.size() == 2 &&
                special_pair_scalar(code.vectors[set[0]], code.vectors[set[1]], static_cast<Index>(i)).has_value();
      } else {
        spans = spans_unit_vector(field, code.vectors, set, static_cast<Index>(i));
      }
      if (!spans) {
        cr.spans = false;
        cr.problems.push_back(where + (form == CodeForm::Special2 ? ": pair difference is not a nonzero multiple of e_i"
                                                                   : ": set does not span e_i"));
      }
    }
    report.total_matched += mt.size();
    report.coordinates.push_back(std::move(cr));
  }

  report.achieved_delta = achieved_delta(code);
  report.meets_claim = report.achieved_delta >= code.claimed_delta;
  report.passed = report.meets_claim &&
                  std::all_of(report.coordinates.begin(), report.coordinates.end(),
                              [](const CoordinateReport& c) { return c.ok(); });
  return report;
}

template <typename Scalar>
QMatching max_special_matching(const std::vector<Vector<Scalar>>& vectors, Index i) {
  // punctured key -> (value at i -> indices)
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> buckets;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const Vector<Scalar>& v = vectors[j];
    Matrix<Scalar> punctured(v.size() - 1, 1);
    punctured << v.head(i), v.tail(v.size() - i - 1);
    Matrix<Scalar> value(1, 1);
    value(0, 0) = v(i);
    buckets[element_key(punctured)][element_key(value)].push_back(j);
  }

  QMatching out;
  out.q = 2;
  for (auto& [_, parts] : buckets) {
    // (remaining, part order) max-heap; ties go to the earlier part.
    using Entry = std::pair<std::size_t, int>;
    std::vector<std::vector<std::size_t>*> order;
    std::priority_queue<Entry> heap;
    std::vector<std::size_t> cursor;
    for (auto& [__, idx] : parts) {
      heap.emplace(idx.size(), -static_cast<int>(order.size()));
      order.push_back(&idx);
      cursor.push_back(0);
    }
    while (heap.size() >= 2) {
      auto [na, ka] = heap.top();
      heap.pop();
      auto [nb, kb] = heap.top();
      heap.pop();
      std::size_t pa = static_cast<std::size_t>(-ka), pb = static_cast<std::size_t>(-kb);
      std::size_t x = (*order[pa])[cursor[pa]++];
      std::size_t y = (*order[pb])[cursor[pb]++];
      out.sets.push_back({std::min(x, y), std::max(x, y)});
      if (na > 1) heap.emplace(na - 1, ka);
      if (nb > 1) heap.emplace(nb - 1, kb);
    }
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

QMatching greedy_disjoint(const std::vector<std::vector<std::size_t>>& candidates, std::size_t q) {
  QMatching out;
  out.q = q;
  std::vector<std::size_t> used;
  auto taken = [&used](std::size_t j) { return std::find(used.begin(), used.end(), j) != used.end(); };
  for (const auto& c : candidates) {
    if (std::any_of(c.begin(), c.end(), taken)) continue;
    used.insert(used.end(), c.begin(), c.end());
    out.sets.push_back(c);
  }
  return out;
}

template <typename Scalar>
QMatching greedy_matching_general(const Field<Scalar>& field, const std::vector<Vector<Scalar>>& vectors,
                                  Index i, std::size_t q,
                                  const std::vector<std::vector<std::size_t>>& candidates) {
  std::vector<std::vector<std::size_t>> spanning;
  for (const auto& c : candidates)
    if (c.size() == q && spans_unit_vector(field, vectors, c, i)) spanning.push_back(c);
  return greedy_disjoint(spanning, q);
}

template <typename Scalar>
LdcInstance<Scalar> hadamard(const Field<Scalar>& field, std::size_t n) {
  if (n == 0 || n > 24) throw Error(ErrorCode::InvalidArgument, "hadamard: need 1 <= n <= 24");
  LdcInstance<Scalar> code;
  code.field = field.spec();
  code.t = n;
  code.m = std::size_t{1} << n;
  code.form = CodeForm::Special2;
  code.q = 2;
  code.claimed_delta = Rational(1, 2);
  for (std::size_t k = 0; k < code.m; ++k) {
    Vector<Scalar> v = zero_vector(field, static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      if ((k >> i) & 1U) v(static_cast<Index>(i)) = field.one();
    code.vectors.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    QMatching mt;
    mt.q = 2;
    for (std::size_t k = 0; k < code.m; ++k)
      if (!((k >> i) & 1U)) mt.sets.push_back({k, k | (std::size_t{1} << i)});
    code.matchings.push_back(std::move(mt));
  }
  return code;
}

#define REP2LDC_INSTANTIATE_LDC(S)                                                                              \
  template std::optional<S> special_pair_scalar<S>(const Vector<S>&, const Vector<S>&, Index);                  \
  template bool spans_unit_vector<S>(const Field<S>&, const std::vector<Vector<S>>&,                            \
                                     const std::vector<std::size_t>&, Index);                                   \
  template Rational achieved_delta<S>(const LdcInstance<S>&);                                                   \
  template VerificationReport verify<S>(const Field<S>&, const LdcInstance<S>&);                                \
  template VerificationReport verify<S>(const Field<S>&, const LdcInstance<S>&, CodeForm);                      \
  template QMatching max_special_matching<S>(const std::vector<Vector<S>>&, Index);                             \
  template QMatching greedy_matching_general<S>(const Field<S>&, const std::vector<Vector<S>>&, Index,           \
                                                std::size_t, const std::vector<std::vector<std::size_t>>&);     \
  template LdcInstance<S> hadamard<S>(const Field<S>&, std::size_t);

REP2LDC_INSTANTIATE_LDC(Zp)
REP2LDC_INSTANTIATE_LDC(Rational)

}  // namespace rep2ldc
