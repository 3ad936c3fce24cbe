#include "rep2ldc/io.hpp"

#include <openssl/sha.h>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rep2ldc {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T get_as(const Json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::size_t get_count(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    schema_error(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

const Json& array_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) schema_error(std::string("'") + key + "' must be an array");
  return v;
}

Json rational_to_json(const Rational& r) {
  const BigInt num = numerator(r);
  if (denominator(r) == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(num);
  return to_string(r);
}

std::vector<std::size_t> index_list_from(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string("'") + what + "' must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0))
      schema_error(std::string("'") + what + "' must hold non-negative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

Rational rational_member(const Json& j, const char* key) { return rational_from_json(member(j, key)); }

ConstructionMode mode_from_string(const std::string& s) {
  if (s == "general") return ConstructionMode::General;
  if (s == "special2") return ConstructionMode::Special2;
  if (s == "lambda") return ConstructionMode::Lambda;
  schema_error("unknown construction mode '" + s + "'");
}

CodeForm form_from_string(const std::string& s) {
  if (s == "general") return CodeForm::General;
  if (s == "special2") return CodeForm::Special2;
  schema_error("unknown code form '" + s + "'");
}

Json checks_list(const std::vector<std::string>& v) { return Json(v); }

}  // namespace

Json field_to_json(const FieldSpec& field) { return Json{{"char", field.characteristic()}}; }

FieldSpec field_from_json(const Json& j) {
  const Json& c = j.is_object() ? member(j, "char") : j;
  if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
    schema_error("field characteristic must be a non-negative integer");
  try {
    return FieldSpec::from_characteristic(c.get<std::uint64_t>());
  } catch (const Error& e) {
    schema_error(e.what());
  }
}

template <typename Scalar>
Json scalar_to_json(const Field<Scalar>& field, const Scalar& x) {
  return rational_to_json(field.to_rational(field.canonical(x)));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema_error("expected an integer or an \"a/b\" string, got " + j.dump());
}

template <typename Scalar>
Json vector_to_json(const Field<Scalar>& field, const Vector<Scalar>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(field, v(i)));
  return out;
}

template <typename Scalar>
Vector<Scalar> vector_from_json(const Field<Scalar>& field, const Json& j) {
  if (!j.is_array()) schema_error("a vector must be an array");
  Vector<Scalar> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = field.from_rational(rational_from_json(j[i]));
  return v;
}

template <typename Scalar>
Json matrix_to_json(const Field<Scalar>& field, const Matrix<Scalar>& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(field, m(r, c)));
    entries.push_back(std::move(row));
  }
  return Json{{"field", field_to_json(field.spec())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix<Rational> matrix_from_json(const Json& j) {
  const Json& entries = j.is_array() ? j : array_member(j, "entries");
  const auto rows = static_cast<Index>(entries.size());
  Index cols = -1;
  if (j.is_object() && j.contains("cols")) cols = static_cast<Index>(get_count(j, "cols"));
  if (j.is_object() && j.contains("rows") && get_count(j, "rows") != entries.size())
    schema_error("matrix 'rows' disagrees with its entries");
  for (const auto& row : entries) {
    if (!row.is_array()) schema_error("matrix rows must be arrays");
    if (cols < 0) cols = static_cast<Index>(row.size());
    if (static_cast<Index>(row.size()) != cols) schema_error("ragged matrix rows");
  }
  if (cols < 0) cols = 0;
  Matrix<Rational> m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rational_from_json(entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

template <typename Scalar>
Matrix<Scalar> matrix_from_json(const Field<Scalar>& field, const Json& j) {
  if (j.is_object() && j.contains("field") && !(field_from_json(j["field"]) == field.spec()))
    schema_error("matrix field differs from " + field.spec().name());
  try {
    return from_rational_matrix(field, matrix_from_json(j));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    schema_error(e.what());
  }
}

Json group_spec_to_json(const GroupSpec& spec) {
  Json gens = Json::array();
  with_field(spec.field, [&](const auto& field) {
    for (const auto& g : spec.generators) gens.push_back(matrix_to_json(field, from_rational_matrix(field, g)));
  });
  return Json{{"field", field_to_json(spec.field)}, {"dim", spec.dim}, {"generators", gens}, {"cap", spec.cap}};
}

GroupSpec group_spec_from_json(const Json& j) {
  if (j.is_object() && j.contains("group") && !j.contains("generators")) return group_spec_from_json(j["group"]);
  GroupSpec spec;
  spec.field = field_from_json(member(j, "field"));
  spec.dim = static_cast<Index>(get_count(j, "dim"));
  if (spec.dim == 0) schema_error("dim must be positive");
  if (j.contains("cap")) spec.cap = get_count(j, "cap");
  for (const auto& g : array_member(j, "generators")) {
    Matrix<Rational> m = matrix_from_json(g);
    if (m.rows() != spec.dim || m.cols() != spec.dim)
      schema_error("generator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                   std::to_string(spec.dim) + "x" + std::to_string(spec.dim));
    try {
      with_field(spec.field, [&](const auto& field) { m = to_rational_matrix(field, from_rational_matrix(field, m)); });
    } catch (const Error& e) {
      schema_error(e.what());
    }
    spec.generators.push_back(std::move(m));
  }
  if (spec.generators.empty()) schema_error("at least one generator is required");
  return spec;
}

std::string group_spec_hash(const GroupSpec& spec) {
  const std::string text = group_spec_to_json(spec).dump();
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::ostringstream hex;
  for (unsigned char b : digest) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return hex.str();
}

template <typename Scalar>
Json enumeration_to_json(const MatrixGroup<Scalar>& group) {
  Json elements = Json::array();
  for (ElemRef g = 0; g < group.order(); ++g) {
    Json e = matrix_to_json(group.field(), group[g]);
    elements.push_back(Json{{"index", g},
                            {"entries", e["entries"]},
                            {"word", group.word(g)},
                            {"order", element_order(group, g)}});
  }
  return Json{{"field", field_to_json(group.field().spec())},
              {"dim", group.dim()},
              {"order", group.order()},
              {"generators", group.generators()},
              {"elements", elements}};
}

Json fixture_to_json(const Fixture& fixture) {
  Json expected = Json::object();
  for (const auto& [k, v] : fixture.expected) expected[k] = v;
  Json out = group_spec_to_json(fixture.group);
  out["fixture"] = Json{{"name", fixture.name},
                        {"family", fixture.family},
                        {"params", fixture.params},
                        {"expected", expected},
                        {"witness", with_field(fixture.group.field, [&](const auto& field) {
                           return matrix_to_json(field, from_rational_matrix(field, fixture.witness));
                         })}};
  return out;
}

template <typename Scalar>
Json ldc_to_json(const Field<Scalar>& field, const LdcInstance<Scalar>& code) {
  Json vectors = Json::array();
  for (const auto& v : code.vectors) vectors.push_back(vector_to_json(field, v));
  Json matchings = Json::array();
  for (const auto& mt : code.matchings) matchings.push_back(mt.sets);
  return Json{{"field", field_to_json(code.field)},
              {"t", code.t},
              {"m", code.m},
              {"vectors", vectors},
              {"matchings", matchings},
              {"form", to_string(code.form)},
              {"q", code.q},
              {"claimed_delta", to_string(code.claimed_delta)}};
}

template <typename Scalar>
LdcInstance<Scalar> ldc_from_json(const Field<Scalar>& field, const Json& j) {
  LdcInstance<Scalar> code;
  code.field = field_from_json(member(j, "field"));
  if (!(code.field == field.spec())) schema_error("code field differs from " + field.spec().name());
  code.t = get_count(j, "t");
  code.m = get_count(j, "m");
  code.q = j.contains("q") ? get_count(j, "q") : 2;
  code.form = form_from_string(j.contains("form") ? get_as<std::string>(j, "form") : "general");
  code.claimed_delta = j.contains("claimed_delta") ? rational_member(j, "claimed_delta") : Rational(0);
  try {
    for (const auto& v : array_member(j, "vectors")) code.vectors.push_back(vector_from_json(field, v));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    schema_error(e.what());
  }
  for (const auto& mj : array_member(j, "matchings")) {
    QMatching mt;
    mt.q = code.q;
    if (!mj.is_array()) schema_error("each matching must be an array of index sets");
    for (const auto& set : mj) mt.sets.push_back(index_list_from(set, "matching set"));
    code.matchings.push_back(std::move(mt));
  }
  return code;
}

Json report_to_json(const VerificationReport& report) {
  Json coords = Json::array();
  for (const auto& c : report.coordinates)
    coords.push_back(Json{{"coordinate", c.coordinate},
                          {"matching_size", c.matching_size},
                          {"set_sizes_ok", c.set_sizes_ok},
                          {"indices_in_range", c.indices_in_range},
                          {"disjoint", c.disjoint},
                          {"spans", c.spans},
                          {"ok", c.ok()},
                          {"problems", checks_list(c.problems)}});
  return Json{{"form", to_string(report.form)},
              {"well_formed", report.well_formed},
              {"shape_problems", checks_list(report.shape_problems)},
              {"coordinates", coords},
              {"total_matched", report.total_matched},
              {"achieved_delta", to_string(report.achieved_delta)},
              {"claimed_delta", to_string(report.claimed_delta)},
              {"meets_claim", report.meets_claim},
              {"passed", report.passed}};
}

Json bound_reports_to_json(const std::vector<BoundReport>& reports) {
  Json rows = Json::array();
  for (const auto& r : reports)
    rows.push_back(Json{{"h", r.h},
                        {"order", r.order},
                        {"gamma", to_string(r.gamma)},
                        {"theta", to_string(r.theta)},
                        {"n", r.n},
                        {"group_size", r.group_size},
                        {"numerator", to_string(r.numerator)},
                        {"lower_bound", r.lower_bound},
                        {"rank", r.actual_rank},
                        {"satisfied", r.satisfied},
                        {"uniform_satisfied", r.uniform_satisfied}});
  return rows;
}

std::string bound_reports_to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << "h,ord,gamma,rank,bound,satisfied\n";
  for (const auto& r : reports)
    out << r.h << ',' << r.order << ',' << to_string(r.gamma) << ',' << r.actual_rank << ',' << std::setprecision(6)
        << r.lower_bound << ',' << (r.satisfied ? "true" : "false") << '\n';
  return out.str();
}

Json audit_to_json(const EntropyAudit& audit) {
  Json bounds = Json::array();
  for (const auto& b : audit.matching_bound_terms) bounds.push_back(to_string(b));
  Json term_ok = Json::array();
  for (bool b : audit.chain_term_ok) term_ok.push_back(b);
  return Json{{"m", audit.m},
              {"t", audit.t},
              {"entropy", audit.entropy},
              {"log2_m", audit.log2_m},
              {"chain_terms", audit.chain_terms},
              {"matching_bound_terms", bounds},
              {"prefix_classes", audit.prefix_classes},
              {"chain_term_ok", term_ok},
              {"two_delta_t", to_string(audit.two_delta_t)},
              {"chain_identity_ok", audit.chain_identity_ok},
              {"entropy_upper_ok", audit.entropy_upper_ok},
              {"entropy_bound_ok", audit.entropy_bound_ok},
              {"length_bound_ok", audit.length_bound_ok},
              {"length_bound_tight", audit.length_bound_tight},
              {"passed", audit.passed}};
}

Json cert_report_to_json(const CertReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"failures", checks_list(c.failures)}});
  return Json{{"checks", checks}, {"ldc", report_to_json(report.ldc)}, {"passed", report.passed}};
}

template <typename Scalar>
Json cert_to_json(const GroupSpec& spec, const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert) {
  const Field<Scalar>& field = group.field();
  Json alphas = Json::array();
  for (const auto& a : cert.alphas) alphas.push_back(scalar_to_json(field, a));
  Json hat_w = Json::array();
  for (const auto& v : cert.family.hat_w) hat_w.push_back(vector_to_json(field, v));
  Json family{{"g", cert.family.g_refs},
              {"U", matrix_to_json(field, cert.family.U.basis())},
              {"W", matrix_to_json(field, cert.family.W)},
              {"hat_w", hat_w}};
  return Json{{"format", "rep2ldc-cert"},
              {"version", 1},
              {"group", group_spec_to_json(spec)},
              {"group_sha256", group_spec_hash(spec)},
              {"group_order", group.order()},
              {"mode", to_string(cert.mode)},
              {"hs", cert.hs},
              {"alphas", alphas},
              {"lambda", cert.lambda ? scalar_to_json(field, *cert.lambda) : Json(nullptr)},
              {"q", cert.q},
              {"order_h", cert.order_h},
              {"D", matrix_to_json(field, cert.D)},
              {"R", cert.R},
              {"Y", matrix_to_json(field, cert.Y)},
              {"X", matrix_to_json(field, cert.X)},
              {"family", family},
              {"t_lower", cert.t_lower},
              {"selection", cert.selection},
              {"greedy_bound_met", cert.greedy_bound_met},
              {"z", vector_to_json(field, cert.z)},
              {"seed", cert.seed},
              {"z_search", cert.z_search},
              {"prefilter_total", cert.prefilter_total},
              {"beta_nonzero_count", cert.beta_nonzero_count},
              {"ldc", ldc_to_json(field, cert.code)},
              {"achieved_delta", to_string(cert.achieved_delta)},
              {"target_delta", to_string(cert.target_delta)}};
}

template <typename Scalar>
ConstructionCert<Scalar> cert_from_json(const MatrixGroup<Scalar>& group, const Json& j) {
  const Field<Scalar>& field = group.field();
  auto scalar = [&field](const Json& x) {
    try {
      return field.from_rational(rational_from_json(x));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse) throw;
      schema_error(e.what());
    }
  };
  ConstructionCert<Scalar> cert;
  cert.mode = mode_from_string(get_as<std::string>(j, "mode"));
  cert.hs = index_list_from(member(j, "hs"), "hs");
  for (const auto& a : array_member(j, "alphas")) cert.alphas.push_back(scalar(a));
  if (j.contains("lambda") && !j["lambda"].is_null()) cert.lambda = scalar(j["lambda"]);
  cert.q = get_count(j, "q");
  cert.order_h = get_count(j, "order_h");
  cert.D = matrix_from_json(field, member(j, "D"));
  cert.R = static_cast<Index>(get_count(j, "R"));
  cert.Y = matrix_from_json(field, member(j, "Y"));
  cert.X = matrix_from_json(field, member(j, "X"));
  const Json& fam = member(j, "family");
  cert.family.g_refs = index_list_from(member(fam, "g"), "family.g");
  const Matrix<Scalar> u = matrix_from_json(field, member(fam, "U"));
  cert.family.U = Subspace<Scalar>(u, group.dim());
  cert.family.W = matrix_from_json(field, member(fam, "W"));
  for (const auto& v : array_member(fam, "hat_w")) cert.family.hat_w.push_back(vector_from_json(field, v));
  cert.t_lower = get_count(j, "t_lower");
  cert.selection = index_list_from(member(j, "selection"), "selection");
  cert.greedy_bound_met = get_as<bool>(j, "greedy_bound_met");
  cert.z = vector_from_json(field, member(j, "z"));
  cert.seed = get_as<std::uint64_t>(j, "seed");
  cert.z_search = get_as<std::string>(j, "z_search");
  cert.prefilter_total = get_count(j, "prefilter_total");
  cert.beta_nonzero_count = index_list_from(member(j, "beta_nonzero_count"), "beta_nonzero_count");
  cert.code = ldc_from_json(field, member(j, "ldc"));
  cert.achieved_delta = rational_member(j, "achieved_delta");
  cert.target_delta = rational_member(j, "target_delta");
  return cert;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

#define REP2LDC_INSTANTIATE_IO(S)                                                                       \
  template Json scalar_to_json<S>(const Field<S>&, const S&);                                           \
  template Json vector_to_json<S>(const Field<S>&, const Vector<S>&);                                   \
  template Vector<S> vector_from_json<S>(const Field<S>&, const Json&);                                 \
  template Json matrix_to_json<S>(const Field<S>&, const Matrix<S>&);                                   \
  template Matrix<S> matrix_from_json<S>(const Field<S>&, const Json&);                                 \
  template Json enumeration_to_json<S>(const MatrixGroup<S>&);                                          \
  template Json ldc_to_json<S>(const Field<S>&, const LdcInstance<S>&);                                 \
  template LdcInstance<S> ldc_from_json<S>(const Field<S>&, const Json&);                               \
  template Json cert_to_json<S>(const GroupSpec&, const MatrixGroup<S>&, const ConstructionCert<S>&);   \
  template ConstructionCert<S> cert_from_json<S>(const MatrixGroup<S>&, const Json&);

REP2LDC_INSTANTIATE_IO(Zp)
REP2LDC_INSTANTIATE_IO(Rational)

}  // namespace rep2ldc
