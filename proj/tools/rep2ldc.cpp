#include <iostream>

#include <CLI11.hpp>

#include "rep2ldc/commands.hpp"

int main(int argc, char** argv) {
  using namespace rep2ldc;

  CLI::App app{"Rank separation in group representations via locally decodable codes"};
  app.require_subcommand(1);
  RunConfig config;
  std::size_t cap = 0;

  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--input", config.input, "group-spec JSON file");
    cmd->add_option("--fixture", config.fixture, "built-in fixture, e.g. signed-shift(4,3)");
    cmd->add_option("--cap", cap, "maximum group order to enumerate");
  };
  auto add_output = [&](CLI::App* cmd, const std::vector<std::string>& formats) {
    cmd->add_option("--format", config.format, "output format")->check(CLI::IsMember(formats));
    cmd->add_option("--output", config.output, "write the report or certificate here");
  };

  auto* scan = app.add_subcommand("rank-scan", "check rank(h - I) against the separation bound for every h");
  add_group(scan);
  add_output(scan, {"text", "json", "csv"});

  auto* construct = app.add_subcommand("construct", "build a certified LDC from a low-rank combination");
  add_group(construct);
  construct->set_help_flag("--help", "Print this help message and exit");
  add_output(construct, {"text", "json"});
  construct->add_option("--h", config.h, "element index (or 'witness' with a fixture)");
  construct->add_option("--hs", config.hs, "element indices h_1..h_q")->delimiter(',');
  construct->add_option("--alphas", config.alphas, "coefficients alpha_1..alpha_q")->delimiter(',');
  construct->add_option("--lambda", config.lambda, "use h - lambda I with the doubled code");
  construct->add_option("--q", config.q, "query count (must equal the number of --hs)");
  construct->add_flag("--special2", config.special2, "special 2-query code from h - I");
  construct->add_option("--seed", config.seed, "seed for the z search");

  auto* verify = app.add_subcommand("verify", "verify an LDC or certificate file");
  verify->add_option("--input", config.input, "LDC or certificate JSON")->required();
  verify->add_option("--cap", cap, "maximum group order to enumerate");
  add_output(verify, {"text", "json"});

  auto* demo = app.add_subcommand("demo", "run the full pipeline on signed-shift(4,p)");
  demo->add_option("--field", config.field, "characteristic (0 for the rationals)");
  demo->add_option("--seed", config.seed, "seed for the z search");
  demo->add_option("--cap", cap, "maximum group order to enumerate");

  auto* fixtures = app.add_subcommand("fixtures", "built-in fixtures");
  fixtures->require_subcommand(1);
  auto* list = fixtures->add_subcommand("list", "list fixture families");
  auto* exp = fixtures->add_subcommand("export", "write a fixture as group-spec JSON");
  exp->add_option("name", config.fixture, "fixture, e.g. dihedral(5,11)")->required();
  exp->add_option("--output", config.output, "output file");
  exp->add_option("--cap", cap, "maximum group order to enumerate");
  exp->add_flag("--elements", config.elements, "include the element list with generator words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (scan->parsed()) config.command = "rank-scan";
  if (construct->parsed()) config.command = "construct";
  if (verify->parsed()) config.command = "verify";
  if (demo->parsed()) config.command = "demo";
  if (list->parsed()) config.command = "fixtures-list";
  if (exp->parsed()) config.command = "fixtures-export";
  for (auto* cmd : {scan, construct, verify, demo, exp})
    if (cmd->count("--cap") > 0) config.cap = cap;

  return run_command(config, std::cout, std::cerr);
}
