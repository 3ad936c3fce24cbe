#include "rep2ldc/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rep2ldc/io.hpp"

namespace rep2ldc {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded: return kExitCap;
    case ErrorCode::ZeroMatrix:
    case ErrorCode::ZeroVector:
    case ErrorCode::IdentityElement:
    case ErrorCode::ScalarMultipleOfIdentity: return kExitDegenerate;
    case ErrorCode::OrbitDoesNotSpan: return kExitSpanning;
    case ErrorCode::InternalInconsistency:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::PairNotSeparated:
    case ErrorCode::MatchingCrossesPrefixClass: return kExitFailed;
    default: return kExitParse;
  }
}

std::size_t effective_cap(const RunConfig& config, std::size_t fallback) {
  if (config.cap) return *config.cap;
  if (const char* env = std::getenv("REP2LDC_CAP"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Parse, std::string("REP2LDC_CAP is not a non-negative integer: '") + env + "'");
  }
  return fallback;
}

namespace {

struct Source {
  GroupSpec spec;
  std::optional<Fixture> fixture;
  std::string label;
};

Source load_source(const RunConfig& config) {
  if (!config.fixture.empty() && !config.input.empty())
    throw Error(ErrorCode::Parse, "give either --fixture or --input, not both");
  if (!config.fixture.empty()) {
    Fixture f = fixture_by_name(config.fixture, effective_cap(config, kDefaultGroupCap));
    return {f.group, f, f.name};
  }
  if (config.input.empty()) throw Error(ErrorCode::Parse, "a group is required: pass --input FILE or --fixture NAME");
  GroupSpec spec = group_spec_from_json(read_json_file(config.input));
  spec.cap = effective_cap(config, spec.cap);
  return {spec, std::nullopt, config.input};
}

template <typename Scalar>
ElemRef resolve_element(const MatrixGroup<Scalar>& group, const Source& source, const std::string& text) {
  if (text == "witness") {
    if (!source.fixture) throw Error(ErrorCode::Parse, "'witness' needs a --fixture");
    return witness_position(group, *source.fixture);
  }
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::Parse, "element index must be an integer: '" + text + "'");
  if (v >= group.order())
    throw Error(ErrorCode::Parse,
                "element index " + text + " out of range for a group of order " + std::to_string(group.order()));
  return static_cast<ElemRef>(v);
}

template <typename Scalar>
Scalar parse_scalar(const Field<Scalar>& field, const std::string& text) {
  const Rational r = parse_rational(text);
  try {
    return field.from_rational(r);
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty())
    out << text;
  else
    write_text_file(config.output, text);
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
const char* pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

void check_format(const RunConfig& config, bool csv_allowed) {
  if (config.format != "text" && config.format != "json" && !(csv_allowed && config.format == "csv"))
    throw Error(ErrorCode::Parse, "unsupported --format '" + config.format + "'");
}

std::optional<EntropyAudit> audit_if_special(const VerificationReport& report, const auto& code,
                                             std::string& note) {
  if (code.form != CodeForm::Special2) {
    note = "not applicable (general form)";
    return std::nullopt;
  }
  if (!report.well_formed) {
    note = "skipped (malformed code)";
    return std::nullopt;
  }
  try {
    EntropyAudit audit = entropy_audit(code);
    note = audit.passed ? "passed" : "failed";
    if (audit.length_bound_tight) note += ", tight: m = 2^(2 delta t)";
    return audit;
  } catch (const Error& e) {
    note = std::string("failed: ") + e.what();
    EntropyAudit failed;
    return failed;
  }
}

void print_audit(std::ostream& out, const std::optional<EntropyAudit>& audit, const std::string& note) {
  out << "  entropy audit: " << note << '\n';
  if (audit && audit->m > 0)
    out << "    H(X) = " << fixed(audit->entropy) << "  2 delta t = " << to_string(audit->two_delta_t)
        << "  log2 m = " << fixed(audit->log2_m) << '\n';
}

Json audit_json(const std::optional<EntropyAudit>& audit, const std::string& note) {
  Json j = audit ? audit_to_json(*audit) : Json::object();
  j["verdict"] = note;
  j["applicable"] = audit.has_value();
  return j;
}

void print_cert_report(std::ostream& out, const CertReport& report) {
  std::size_t ok = 0;
  for (const auto& c : report.checks) ok += c.passed ? 1 : 0;
  out << "  certificate checks: " << ok << "/" << report.checks.size() << " passed\n";
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    out << "    FAIL " << c.name << '\n';
    for (const auto& f : c.failures) out << "      " << f << '\n';
  }
}

template <typename Scalar>
int rank_scan_with(const Field<Scalar>& field, const RunConfig& config, const Source& source, std::ostream& out) {
  const auto group = close_group(field, source.spec);
  const auto reports = check_rank_separation(group);
  bool all = true;
  for (const auto& r : reports) all = all && r.satisfied;
  if (config.format == "csv") {
    emit(config, out, bound_reports_to_csv(reports));
  } else if (config.format == "json") {
    Json j{{"group", source.label},
           {"field", field.spec().name()},
           {"order", group.order()},
           {"dim", group.dim()},
           {"rows", bound_reports_to_json(reports)},
           {"all_satisfied", all}};
    emit(config, out, dump(j));
  } else {
    std::ostringstream s;
    s << "rank-scan " << source.label << "  |G| = " << group.order() << "  n = " << group.dim() << "  "
      << field.spec().name() << '\n';
    s << std::setw(6) << "h" << std::setw(6) << "ord" << std::setw(8) << "gamma" << std::setw(6) << "rank"
      << std::setw(10) << "bound" << "  ok\n";
    std::size_t satisfied = 0;
    for (const auto& r : reports) {
      satisfied += r.satisfied ? 1 : 0;
      s << std::setw(6) << r.h << std::setw(6) << r.order << std::setw(8) << to_string(r.gamma) << std::setw(6)
        << r.actual_rank << std::setw(10) << fixed(r.lower_bound) << "  " << yes_no(r.satisfied) << '\n';
    }
    s << reports.size() << " elements checked, " << satisfied << " satisfied\n";
    emit(config, out, s.str());
  }
  return all ? kExitOk : kExitFailed;
}

template <typename Scalar>
int construct_with(const Field<Scalar>& field, const RunConfig& config, const Source& source, std::ostream& out) {
  const auto group = close_group(field, source.spec);
  ConstructionCert<Scalar> cert;
  if (config.lambda) {
    if (!config.h) throw Error(ErrorCode::Parse, "--lambda needs --h");
    cert = lambda_variant(group, resolve_element(group, source, *config.h), parse_scalar(field, *config.lambda),
                          config.seed);
  } else if (!config.hs.empty()) {
    if (config.alphas.size() != config.hs.size())
      throw Error(ErrorCode::Parse, "--hs and --alphas must have the same length");
    if (config.q && *config.q != config.hs.size())
      throw Error(ErrorCode::Parse, "--q disagrees with the number of --hs");
    std::vector<Scalar> alphas;
    for (const auto& a : config.alphas) alphas.push_back(parse_scalar(field, a));
    for (ElemRef h : config.hs)
      if (h >= group.order()) throw Error(ErrorCode::Parse, "element index " + std::to_string(h) + " out of range");
    cert = build_q_ldc(group, config.hs, alphas, config.seed);
  } else if (config.h) {
    cert = build_special_2ldc(group, resolve_element(group, source, *config.h), config.seed);
  } else {
    throw Error(ErrorCode::Parse, "construct needs --h (with --special2 or --lambda) or --hs and --alphas");
  }

  const CertReport report = check_certificate(group, cert);
  std::string note;
  const auto audit = audit_if_special(report.ldc, cert.code, note);
  const bool audit_ok = !audit || audit->passed;
  const Json cert_json = cert_to_json(source.spec, group, cert);
  if (!config.output.empty()) write_text_file(config.output, dump(cert_json));

  if (config.format == "json") {
    if (config.output.empty()) out << dump(cert_json);
  } else {
    const Index n = group.dim();
    out << "construct " << source.label << "  mode " << to_string(cert.mode) << "  seed " << cert.seed << '\n';
    out << "  m = " << cert.code.m << "  t = " << cert.code.t << "  R = " << cert.R << "  (ceil(n/R) = "
        << cert.t_lower << ", n = " << n << ")\n";
    out << "  delta = " << to_string(cert.achieved_delta) << " achieved, target " << to_string(cert.target_delta)
        << (cert.achieved_delta >= cert.target_delta ? " (met)" : " (missed)") << '\n';
    std::size_t alive = 0;
    for (auto c : cert.beta_nonzero_count) alive += c;
    out << "  z search: " << cert.z_search << ", " << alive << "/" << cert.prefilter_total << " tuples survive\n";
    if (!cert.greedy_bound_met) out << "  note: greedy tuple selection fell below |G|/q^2\n";
    print_cert_report(out, report);
    print_audit(out, audit, note);
    if (!config.output.empty()) out << "  certificate written to " << config.output << '\n';
  }
  return report.passed && audit_ok ? kExitOk : kExitFailed;
}

template <typename Scalar>
int verify_cert_with(const Field<Scalar>& field, const RunConfig& config, const Json& j, GroupSpec spec,
                     std::ostream& out) {
  const bool hash_ok = j.contains("group_sha256") && j["group_sha256"] == group_spec_hash(spec);
  spec.cap = effective_cap(config, spec.cap);
  const auto group = close_group(field, spec);
  const auto cert = cert_from_json(group, j);
  CertReport report = check_certificate(group, cert);
  CertCheck hash{"group_hash", hash_ok, {}};
  if (!hash_ok) hash.failures.push_back("group_sha256 does not match the embedded group");
  report.checks.insert(report.checks.begin(), hash);
  report.passed = report.passed && hash_ok;
  std::string note;
  const auto audit = audit_if_special(report.ldc, cert.code, note);
  const bool passed = report.passed && (!audit || audit->passed);
  if (config.format == "json") {
    emit(config, out,
         dump(Json{{"kind", "certificate"},
                   {"report", cert_report_to_json(report)},
                   {"entropy_audit", audit_json(audit, note)},
                   {"passed", passed}}));
  } else {
    std::ostringstream s;
    s << "verify certificate " << config.input << "  " << field.spec().name() << "  mode " << to_string(cert.mode)
      << '\n';
    s << "  m = " << cert.code.m << "  t = " << cert.code.t << "  delta = " << to_string(report.ldc.achieved_delta)
      << "  target " << to_string(cert.target_delta) << '\n';
    print_cert_report(s, report);
    print_audit(s, audit, note);
    s << "  verdict: " << pass_fail(passed) << '\n';
    emit(config, out, s.str());
  }
  return passed ? kExitOk : kExitFailed;
}

template <typename Scalar>
int verify_ldc_with(const Field<Scalar>& field, const RunConfig& config, const Json& j, std::ostream& out) {
  const auto code = ldc_from_json(field, j);
  const VerificationReport report = verify(field, code);
  std::string note;
  const auto audit = audit_if_special(report, code, note);
  const bool passed = report.passed && (!audit || audit->passed);
  if (config.format == "json") {
    emit(config, out,
         dump(Json{{"kind", "ldc"},
                   {"report", report_to_json(report)},
                   {"entropy_audit", audit_json(audit, note)},
                   {"passed", passed}}));
  } else {
    std::ostringstream s;
    s << "verify ldc " << config.input << "  " << field.spec().name() << "  form " << to_string(code.form) << '\n';
    s << "  m = " << code.m << "  t = " << code.t << "  q = " << code.q << '\n';
    for (const auto& p : report.shape_problems) s << "  FAIL shape: " << p << '\n';
    for (const auto& c : report.coordinates) {
      s << "  coordinate " << c.coordinate << ": " << c.matching_size << " sets  " << (c.ok() ? "ok" : "FAIL") << '\n';
      for (const auto& p : c.problems) s << "    " << p << '\n';
    }
    s << "  delta = " << to_string(report.achieved_delta) << "  claimed " << to_string(report.claimed_delta)
      << (report.meets_claim ? " (met)" : " (missed)") << '\n';
    print_audit(s, audit, note);
    s << "  verdict: " << pass_fail(passed) << '\n';
    emit(config, out, s.str());
  }
  return passed ? kExitOk : kExitFailed;
}

template <typename Scalar>
int demo_with(const Field<Scalar>& field, const RunConfig& config, std::ostream& out) {
  const Fixture fixture = signed_shift_group(4, field.characteristic(), effective_cap(config, kDefaultGroupCap));
  const auto group = close_group(field, fixture.group);
  const ElemRef h = witness_position(group, fixture);
  std::vector<std::pair<std::string, bool>> verdicts;

  out << "demo: " << fixture.name << " over " << field.spec().name() << ", seed " << config.seed << "\n\n";
  const bool irreducible = burnside_irreducible(group);
  const Index reflection_rank = rank_minus_identity(group, h);
  out << "group: |G| = " << group.order() << " (n 2^n = " << 4 * 16 << "), irreducible " << yes_no(irreducible)
      << ", reflection h = #" << h << " with rank(h - I) = " << reflection_rank << '\n';
  verdicts.emplace_back("tightness example: |G| = 64, irreducible, rank 1",
                        group.order() == 64 && irreducible && reflection_rank == 1);

  const auto cert = build_special_2ldc(group, h, config.seed);
  const CertReport report = check_certificate(group, cert);
  out << "special 2-LDC: m = " << cert.code.m << ", t = " << cert.code.t << ", R = " << cert.R
      << ", delta = " << to_string(cert.achieved_delta) << " (target " << to_string(cert.target_delta) << ")\n";
  print_cert_report(out, report);
  verdicts.emplace_back("construction: verified, delta >= theta gamma / 2",
                        report.passed && cert.achieved_delta >= cert.target_delta);

  const EntropyAudit audit = entropy_audit(cert.code);
  out << "entropy audit: H(X) = " << fixed(audit.entropy) << ", 2 delta t = " << to_string(audit.two_delta_t)
      << ", log2 m = " << fixed(audit.log2_m) << '\n';
  verdicts.emplace_back("entropy audit: log2 m >= 2 delta t", audit.passed);

  const auto bounds = check_rank_separation(group);
  std::size_t satisfied = 0;
  for (const auto& b : bounds) satisfied += b.satisfied ? 1 : 0;
  for (const auto& b : bounds)
    if (b.h == h)
      out << "rank separation: reflection bound theta gamma n / log2 |G| = " << to_string(b.numerator) << " / "
          << fixed(std::log2(static_cast<double>(group.order()))) << " = " << fixed(b.lower_bound)
          << " <= rank " << b.actual_rank << '\n';
  out << "rank separation: " << satisfied << "/" << bounds.size() << " elements satisfy the bound\n";
  verdicts.emplace_back("rank separation: every h != I satisfied", satisfied == bounds.size());

  const FixedSpaceAverage avg = avg_fixed_space(group);
  out << "average fixed-space dimension: " << to_string(avg.average) << " <= n/2 = 2: " << yes_no(avg.passed) << '\n';
  verdicts.emplace_back("average fixed space <= n/2", avg.passed);

  bool hadamard_ok = true;
  const PrimeField gf2(2);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto code = hadamard(gf2, n);
    const auto a = entropy_audit(code);
    hadamard_ok = hadamard_ok && verify(gf2, code).passed && a.passed && a.length_bound_tight;
  }
  out << "hadamard n = 1..6 over GF(2): special (2, 1/2)-LDC with m = 2^(2 delta n): " << yes_no(hadamard_ok)
      << '\n';
  verdicts.emplace_back("hadamard codes tight", hadamard_ok);

  out << "\nsummary\n";
  bool all = true;
  for (const auto& [name, ok] : verdicts) {
    out << "  [" << pass_fail(ok) << "] " << name << '\n';
    all = all && ok;
  }
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int cmd_rank_scan(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_format(config, true);
  const Source source = load_source(config);
  return with_field(source.spec.field,
                    [&](const auto& field) { return rank_scan_with(field, config, source, out); });
}

int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_format(config, false);
  const Source source = load_source(config);
  return with_field(source.spec.field,
                    [&](const auto& field) { return construct_with(field, config, source, out); });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  check_format(config, false);
  if (config.input.empty()) throw Error(ErrorCode::Parse, "verify needs --input FILE");
  const Json j = read_json_file(config.input);
  if (j.is_object() && j.contains("group") && j.contains("ldc")) {
    const GroupSpec spec = group_spec_from_json(j["group"]);
    return with_field(spec.field,
                      [&](const auto& field) { return verify_cert_with(field, config, j, spec, out); });
  }
  const FieldSpec field = field_from_json(j.is_object() && j.contains("field") ? j["field"] : Json());
  return with_field(field, [&](const auto& f) { return verify_ldc_with(f, config, j, out); });
}

int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream&) {
  const FieldSpec field = FieldSpec::from_characteristic(config.field);
  return with_field(field, [&](const auto& f) { return demo_with(f, config, out); });
}

int cmd_fixtures_list(const RunConfig&, std::ostream& out, std::ostream&) {
  for (const auto& line : fixture_catalog()) out << line << '\n';
  return kExitOk;
}

int cmd_fixtures_export(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.fixture.empty()) throw Error(ErrorCode::Parse, "fixtures export needs a fixture name");
  const Fixture fixture = fixture_by_name(config.fixture, effective_cap(config, kDefaultGroupCap));
  Json j = fixture_to_json(fixture);
  if (config.elements)
    with_field(fixture.group.field,
               [&](const auto& field) { j["enumeration"] = enumeration_to_json(close_group(field, fixture.group)); });
  emit(config, out, dump(j));
  return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "rank-scan") return cmd_rank_scan(config, out, err);
    if (config.command == "construct") return cmd_construct(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "demo") return cmd_demo(config, out, err);
    if (config.command == "fixtures-list") return cmd_fixtures_list(config, out, err);
    if (config.command == "fixtures-export") return cmd_fixtures_export(config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace rep2ldc
