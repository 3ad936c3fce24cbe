#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rep2ldc/commands.hpp"
#include "rep2ldc/fixtures.hpp"
#include "rep2ldc/io.hpp"
#include "rep2ldc/ldc.hpp"

using namespace rep2ldc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(RunConfig config) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(config, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rep2ldc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig construct_signed_shift(std::uint64_t seed, const std::string& output) {
  RunConfig c;
  c.command = "construct";
  c.fixture = "signed-shift(4,3)";
  c.h = "witness";
  c.special2 = true;
  c.seed = seed;
  c.output = output;
  return c;
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("rank-scan", "[cli]") {
  RunConfig c;
  c.command = "rank-scan";
  c.fixture = "signed-shift(4,3)";
  auto r = run(c);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "63 elements checked, 63 satisfied"));

  c.format = "csv";
  r = run(c);
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "h,ord,gamma,rank,bound,satisfied");
  std::size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) {
      ++rows;
      CHECK(line.substr(line.rfind(',') + 1) == "true");
    }
  CHECK(rows == 63);

  c.format = "json";
  r = run(c);
  CHECK(parse_json(r.out)["rows"].size() == 63);

  c.format = "text";
  c.cap = 10;
  CHECK(run(c).code == kExitCap);

  const fs::path bad = scratch("malformed.json");
  std::ofstream(bad) << "{\"field\": {\"char\": 3}, \"dim\": ";
  RunConfig m;
  m.command = "rank-scan";
  m.input = bad.string();
  r = run(m);
  CHECK(r.code == kExitParse);
  CHECK(contains(r.err, "ParseError"));
}

TEST_CASE("rank-scan from an exported group file", "[cli]") {
  const fs::path spec = scratch("dihedral.json");
  RunConfig e;
  e.command = "fixtures-export";
  e.fixture = "dihedral(5,11)";
  e.output = spec.string();
  CHECK(run(e).code == kExitOk);
  RunConfig c;
  c.command = "rank-scan";
  c.input = spec.string();
  const auto r = run(c);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "9 elements checked, 9 satisfied"));
  c.cap = 5;
  CHECK(run(c).code == kExitCap);
}

TEST_CASE("construct and verify round trip", "[cli]") {
  const fs::path cert = scratch("signed_shift_cert.json");
  auto r = run(construct_signed_shift(0, cert.string()));
  REQUIRE(r.code == kExitOk);
  CHECK(contains(r.out, "m = 64"));
  CHECK(contains(r.out, "t = 4"));
  const Json j = read_json_file(cert.string());
  CHECK(j["ldc"]["m"] == 64);
  CHECK(rational_from_json(j["achieved_delta"]) >= Rational(1, 3));

  RunConfig v;
  v.command = "verify";
  v.input = cert.string();
  r = run(v);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "verdict: PASS"));

  v.format = "json";
  r = run(v);
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["passed"] == true);
}

TEST_CASE("construct degenerate inputs", "[cli]") {
  RunConfig c = construct_signed_shift(0, "");
  c.h = "0";
  CHECK(run(c).code == kExitDegenerate);

  RunConfig s;
  s.command = "construct";
  s.fixture = "shift(4,3)";
  s.hs = {0, 1, 2, 3};
  s.alphas = {"1", "1", "1", "1"};
  CHECK(run(s).code == kExitSpanning);

  s.alphas = {"0", "0", "0", "0"};
  CHECK(run(s).code == kExitDegenerate);

  RunConfig l;
  l.command = "construct";
  l.fixture = "cyclic(6,7)";
  l.h = "1";
  l.lambda = "3";
  CHECK(run(l).code == kExitDegenerate);

  RunConfig bad = construct_signed_shift(0, "");
  bad.h = "999";
  CHECK(run(bad).code == kExitParse);
  bad.h = "witness";
  bad.fixture = "nonsense(1,2)";
  CHECK(run(bad).code == kExitParse);
}

TEST_CASE("construct lambda and general modes", "[cli]") {
  RunConfig l;
  l.command = "construct";
  l.fixture = "dihedral(5,11)";
  l.h = "witness";
  l.lambda = "-1";
  l.format = "json";
  auto r = run(l);
  REQUIRE(r.code == kExitOk);
  const Json lj = parse_json(r.out);
  CHECK(lj["mode"] == "lambda");
  CHECK(lj["ldc"]["m"] == 20);

  RunConfig g;
  g.command = "construct";
  g.fixture = "signed-shift(4,3)";
  g.hs = {1, 2, 5};
  g.alphas = {"1", "1", "1"};
  g.q = 3;
  g.output = scratch("general_cert.json").string();
  r = run(g);
  REQUIRE(r.code == kExitOk);
  RunConfig v;
  v.command = "verify";
  v.input = g.output;
  r = run(v);
  CHECK(r.code == kExitOk);

  g.q = 4;
  CHECK(run(g).code == kExitParse);
}

TEST_CASE("verify hadamard and general-form files", "[cli]") {
  const PrimeField f2(2);
  const fs::path had = scratch("hadamard3.json");
  write_text_file(had.string(), dump(ldc_to_json(f2, hadamard(f2, 3))));
  RunConfig v;
  v.command = "verify";
  v.input = had.string();
  auto r = run(v);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "tight"));

  auto general = hadamard(f2, 3);
  general.form = CodeForm::General;
  const fs::path gen = scratch("general.json");
  write_text_file(gen.string(), dump(ldc_to_json(f2, general)));
  v.input = gen.string();
  r = run(v);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "not applicable"));
}

TEST_CASE("verify pinpoints a tampered certificate", "[cli]") {
  const fs::path cert = scratch("tampered_cert.json");
  REQUIRE(run(construct_signed_shift(0, cert.string())).code == kExitOk);
  Json j = read_json_file(cert.string());
  Json& entry = j["ldc"]["vectors"][5][0];
  entry = (entry.get<int>() + 1) % 3;
  write_text_file(cert.string(), dump(j));
  RunConfig v;
  v.command = "verify";
  v.input = cert.string();
  const auto r = run(v);
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.out, "FAIL orbit_projection"));
  CHECK(contains(r.out, "a_5"));
  CHECK(contains(r.out, "verdict: FAIL"));

  const fs::path junk = scratch("junk.json");
  write_text_file(junk.string(), "[1, 2");
  v.input = junk.string();
  CHECK(run(v).code == kExitParse);
}

TEST_CASE("demo", "[cli]") {
  RunConfig d;
  d.command = "demo";
  auto r = run(d);
  CHECK(r.code == kExitOk);
  CHECK_FALSE(contains(r.out, "[FAIL]"));
  CHECK(contains(r.out, "[PASS]"));

  d.seed = 7;
  const auto r7 = run(d);
  CHECK(r7.code == kExitOk);
  CHECK_FALSE(contains(r7.out, "[FAIL]"));

  d.seed = 0;
  d.field = 0;
  r = run(d);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "1/2"));
}

TEST_CASE("fixtures list and export", "[cli]") {
  RunConfig l;
  l.command = "fixtures-list";
  auto r = run(l);
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "signed-shift"));

  RunConfig e;
  e.command = "fixtures-export";
  e.fixture = "symmetric(4,5)";
  e.elements = true;
  r = run(e);
  REQUIRE(r.code == kExitOk);
  const Json j = parse_json(r.out);
  CHECK(j["enumeration"]["elements"].size() == 24);
  CHECK(j["fixture"]["expected"]["order"] == 24);
  CHECK(group_spec_from_json(j).dim == 3);
}

TEST_CASE("same seed gives byte-identical certificates", "[cli]") {
  const fs::path a = scratch("det_a.json"), b = scratch("det_b.json");
  REQUIRE(run(construct_signed_shift(3, a.string())).code == kExitOk);
  REQUIRE(run(construct_signed_shift(3, b.string())).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("exit codes map errors", "[cli]") {
  CHECK(exit_code_for(ErrorCode::Parse) == 1);
  CHECK(exit_code_for(ErrorCode::CapExceeded) == 2);
  CHECK(exit_code_for(ErrorCode::InternalInconsistency) == 3);
  CHECK(exit_code_for(ErrorCode::ZeroMatrix) == 4);
  CHECK(exit_code_for(ErrorCode::IdentityElement) == 4);
  CHECK(exit_code_for(ErrorCode::OrbitDoesNotSpan) == 5);
  RunConfig c;
  c.command = "frobnicate";
  CHECK(run(c).code == kExitParse);
}

TEST_CASE("cap precedence", "[cli]") {
  RunConfig c;
  CHECK(effective_cap(c, 77) == 77);
  ::setenv("REP2LDC_CAP", "12", 1);
  CHECK(effective_cap(c, 77) == 12);
  c.cap = 5;
  CHECK(effective_cap(c, 77) == 5);
  c.cap.reset();
  ::setenv("REP2LDC_CAP", "lots", 1);
  CHECK_THROWS_AS(effective_cap(c, 77), Error);
  ::unsetenv("REP2LDC_CAP");
}

TEST_CASE("executable argument handling", "[cli]") {
  const char* bin = std::getenv("REP2LDC_BIN");
  if (bin == nullptr) SKIP("REP2LDC_BIN not set");
  const auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("--help") == 0);
  CHECK(status("") == 1);
  CHECK(status("rank-scan --fixture 'signed-shift(4,3)'") == 0);
  CHECK(status("rank-scan --fixture 'signed-shift(4,3)' --cap 10") == 2);
  CHECK(status("rank-scan --fixture 'signed-shift(4,3)' --format xml") == 1);
  CHECK(status("construct --fixture 'signed-shift(4,3)' --h 0 --special2") == 4);
  CHECK(status("fixtures list") == 0);
}
