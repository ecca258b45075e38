#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "proxalg/cli.hpp"

namespace {

void print_report(const proxalg::CliResult& res, bool as_json) {
  if (as_json) {
    std::printf("%s\n", res.report.dump(2).c_str());
    return;
  }
  if (res.report.contains("status")) {
    std::string status = res.report.at("status").get<std::string>();
    std::printf("%s", status.c_str());
    if (res.report.contains("law"))
      std::printf(" (%s)", res.report.at("law").get<std::string>().c_str());
    if (res.report.contains("reason"))
      std::printf(": %s", res.report.at("reason").get<std::string>().c_str());
    std::printf("\n");
    if (res.report.contains("counterexample") && !res.report.at("counterexample").is_null())
      std::printf("%s\n", res.report.at("counterexample").dump().c_str());
  } else {
    std::printf("%s\n", res.report.dump().c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximity algebra toolkit"};
  app.require_subcommand(1);

  proxalg::CliOptions opt;
  std::string path;
  std::string suite;
  std::string op;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "emit the full JSON report");
    sub->add_option("--seed", [&](const CLI::results_t& r) {
      opt.seed = std::stoull(r.at(0));
      return true;
    }, "seed for sampled checks");
    sub->add_flag("--exhaustive", opt.exhaustive, "prefer exhaustive enumeration");
    sub->add_option("--samples", opt.samples, "sample count for randomized checks");
    sub->add_option("--max-atoms", opt.max_atoms, "largest finite carrier to enumerate");
  };

  CLI::App* check = app.add_subcommand("check", "verify laws on an instance file");
  check->add_option("file", path, "instance JSON file")->required();
  check->add_option("--suite", suite, "law suite to run")
      ->required()
      ->check(CLI::IsMember(
          {"devries", "proximity", "morphism", "weakpm", "claim", "roundtrip"}));
  add_common(check);

  CLI::App* compute = app.add_subcommand("compute", "run an operation on an instance file");
  compute->add_option("file", path, "instance JSON file")->required();
  compute->add_option("--op", op, "operation to apply")
      ->required()
      ->check(CLI::IsMember({"baire-upper", "baire-lower", "normalize", "decompose-orth",
                             "decompose-decr", "invert", "annihilator", "compose-star",
                             "interpolate", "iso"}));
  add_common(compute);

  CLI11_PARSE(app, argc, argv);

  proxalg::CliResult res;
  if (check->parsed()) {
    res = proxalg::run_check_file(path, suite, opt);
    print_report(res, opt.json);
  } else {
    res = proxalg::run_compute_file(path, op, opt);
    print_report(res, true);
  }
  return res.exit_code;
}
