#include "levdun/cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levdun/dataset.hpp"
#include "levdun/errors.hpp"
#include "levdun/inference.hpp"
#include "levdun/report_io.hpp"
#include "levdun/simulate.hpp"

namespace levdun::cli {

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 2;
constexpr int kNumericError = 3;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("LEVDUN_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ArgumentError("LEVDUN_SEED is not an unsigned integer");
    }
  }
  return 0;
}

struct TestArgs {
  std::string data;
  std::string response;
  std::string group;
  std::string control;
  std::string contrast = "dunnett";
  std::string alternative = "two-sided";
  bool modified = false;
  double alpha = 0.05;
  std::optional<std::uint64_t> seed;
  std::size_t budget = 100000;
  std::string format = "table";
  std::string out_path;
};

void add_test_flags(CLI::App* cmd, TestArgs& a, bool want_format) {
  cmd->add_option("--data", a.data, "CSV file with the responses")->required();
  cmd->add_option("--response", a.response, "response column name")->required();
  cmd->add_option("--group", a.group, "group column name")->required();
  cmd->add_option("--control", a.control, "label of the control group");
  cmd->add_option("--contrast", a.contrast, "dunnett or grandmean");
  cmd->add_option("--alternative", a.alternative, "greater, less or two-sided");
  cmd->add_flag("--modified", a.modified, "use the zero-trimmed transform");
  cmd->add_option("--alpha", a.alpha, "simultaneous level (default 0.05)");
  cmd->add_option("--seed", a.seed, "seed for the multivariate t evaluation");
  cmd->add_option("--budget", a.budget, "quasi-Monte Carlo point budget");
  if (want_format) {
    cmd->add_option("--format", a.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
  }
  cmd->add_option("--out", a.out_path, "write the report here instead of stdout");
}

TestReport run_test(const TestArgs& a) {
  std::optional<std::string> control;
  if (!a.control.empty()) control = a.control;
  const GroupedSample sample = load_csv(a.data, a.response, a.group, control);

  TestSpec spec;
  spec.contrast_kind = contrast_kind_from_string(a.contrast);
  spec.alternative = alternative_from_string(a.alternative);
  spec.modified = a.modified;
  spec.alpha = a.alpha;
  spec.mvt.sample_budget = a.budget;
  spec.mvt.seed = a.seed ? *a.seed : env_seed();
  return max_t_test(sample, spec);
}

void deliver(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write to '" + out_path + "'");
  f << text;
}

struct SimArgs {
  std::string scenario_path;
  std::vector<std::size_t> sizes;
  std::vector<double> sds;
  std::string contrast = "dunnett";
  std::string alternative = "greater";
  bool modified = false;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<std::vector<double>> patterns;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
};

int cmd_simulate(const SimArgs& a, std::ostream& out) {
  ScenarioFile file;
  if (!a.scenario_path.empty()) {
    std::ifstream f(a.scenario_path);
    if (!f) throw ArgumentError("cannot open scenario file '" + a.scenario_path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    file = scenario_from_json(buf.str());
    if (a.seed) file.spec.seed = *a.seed;
  } else {
    if (a.sizes.empty() || a.sds.empty()) {
      throw ArgumentError("either --scenario or both --n and --sd are required");
    }
    file.spec.group_sizes = a.sizes;
    file.spec.group_sds = a.sds;
    file.spec.contrast_kind = contrast_kind_from_string(a.contrast);
    file.spec.alternative = alternative_from_string(a.alternative);
    file.spec.modified = a.modified;
    file.spec.alpha = a.alpha;
    file.spec.replications = a.reps;
    file.spec.seed = a.seed ? *a.seed : env_seed();
    file.sd_patterns = a.patterns;
    file.spec.validate();
  }

  std::vector<std::pair<std::vector<double>, SimResult>> results;
  if (file.sd_patterns.empty()) {
    results.emplace_back(file.spec.group_sds, run_scenario(file.spec, a.threads));
  } else {
    results = run_power_grid(file.spec, file.sd_patterns, a.threads);
  }

  std::ostringstream text;
  if (a.format == "json") {
    text << sim_results_to_json(file.spec, results);
  } else {
    write_sim_csv(text, file.spec, results);
  }
  deliver(text.str(), a.out_path, out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levene-Dunnett simultaneous variance comparisons"};
  app.require_subcommand(1);

  TestArgs test_args;
  CLI::App* test_cmd = app.add_subcommand(
      "test", "run the test on a CSV dataset and print a report");
  add_test_flags(test_cmd, test_args, true);

  SimArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "estimate rejection rates under a synthetic design");
  sim_cmd->add_option("--scenario", sim_args.scenario_path, "scenario JSON file");
  sim_cmd->add_option("--n", sim_args.sizes, "group sizes, e.g. 10,10,10,10")
      ->delimiter(',');
  sim_cmd->add_option("--sd", sim_args.sds, "group standard deviations")
      ->delimiter(',');
  sim_cmd->add_option("--contrast", sim_args.contrast, "dunnett or grandmean");
  sim_cmd->add_option("--alternative", sim_args.alternative,
                      "greater, less or two-sided");
  sim_cmd->add_flag("--modified", sim_args.modified, "use the zero-trimmed transform");
  sim_cmd->add_option("--alpha", sim_args.alpha, "test level (default 0.05)");
  sim_cmd->add_option("--reps", sim_args.reps, "number of replications");
  sim_cmd->add_option("--seed", sim_args.seed, "simulation seed");
  sim_cmd->add_option("--pattern", sim_args.patterns,
                      "sd pattern for a power grid; repeatable")
      ->delimiter(',');
  sim_cmd->add_option("--threads", sim_args.threads, "worker threads (0 = auto)");
  sim_cmd->add_option("--format", sim_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_option("--out", sim_args.out_path, "write results here");

  TestArgs export_args;
  CLI::App* export_cmd = app.add_subcommand(
      "export-ci", "write the simultaneous confidence bounds as CSV");
  add_test_flags(export_cmd, export_args, false);
  export_cmd->get_option("--out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (test_cmd->parsed()) {
      const TestReport report = run_test(test_args);
      std::ostringstream text;
      if (test_args.format == "json") {
        text << report_to_json(report);
      } else {
        write_report_table(text, report);
      }
      deliver(text.str(), test_args.out_path, out);
      return kOk;
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_args, out);
    }
    if (export_cmd->parsed()) {
      const TestReport report = run_test(export_args);
      std::ostringstream text;
      write_ci_csv(text, report);
      deliver(text.str(), export_args.out_path, out);
      return kOk;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
  return kValidationError;
}

}  // namespace levdun::cli
