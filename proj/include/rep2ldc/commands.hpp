#pragma once

// Subcommands behind the rep2ldc executable. Each returns the process exit
// code and writes human text (or JSON / CSV) to `out`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rep2ldc/error.hpp"

namespace rep2ldc {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitCap = 2,
  kExitFailed = 3,
  kExitDegenerate = 4,
  kExitSpanning = 5,
};

int exit_code_for(ErrorCode code);

struct RunConfig {
  std::string command;  // rank-scan | construct | verify | demo | fixtures-list | fixtures-export
  std::string input;
  std::string fixture;
  std::optional<std::string> h;  // element index, or "witness" with a fixture
  std::vector<std::size_t> hs;
  std::vector<std::string> alphas;
  std::optional<std::string> lambda;
  std::optional<std::size_t> q;
  bool special2 = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  std::string format = "text";  // text | json | csv
  std::string output;
  std::uint32_t field = 3;     // demo only; 0 selects Q
  bool elements = false;       // fixtures export: include the enumeration
};

/// Explicit --cap, then REP2LDC_CAP, then `fallback`.
std::size_t effective_cap(const RunConfig& config, std::size_t fallback);

int cmd_rank_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fixtures_list(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fixtures_export(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps library errors to exit codes.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rep2ldc
