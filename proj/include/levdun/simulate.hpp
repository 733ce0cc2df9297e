#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levdun/inference.hpp"

namespace levdun {

// One simulation design: draw Normal(0, sd_i^2) groups and run the
// Levene-Dunnett test on every replication.
struct ScenarioSpec {
  std::vector<std::size_t> group_sizes;
  std::vector<double> group_sds;
  Alternative alternative = Alternative::greater;
  bool modified = false;
  ContrastKind contrast_kind = ContrastKind::dunnett;
  double alpha = 0.05;
  std::size_t replications = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimResult {
  double global_rejection_rate = 0.0;
  std::vector<double> per_contrast_rejection_rates;
  std::size_t replications_used = 0;
  std::size_t error_replications = 0;  // degenerate draws, never dropped silently
};

// Estimates the familywise rejection rate (global and per contrast) at
// level spec.alpha. Every replication draws from its own pre-assigned
// substream of spec.seed, so the result is bit-identical for any thread
// count (threads = 0 picks the hardware count).
SimResult run_scenario(const ScenarioSpec& spec, int threads = 0);

// run_scenario once per sd pattern, with substreams disjoint across
// patterns. Results are returned in the order the patterns were given.
std::vector<std::pair<std::vector<double>, SimResult>> run_power_grid(
    const ScenarioSpec& base, std::span<const std::vector<double>> sd_patterns,
    int threads = 0);

// JSON scenario document mirroring ScenarioSpec; an optional "sd_patterns"
// array of sd vectors requests a power grid.
struct ScenarioFile {
  ScenarioSpec spec;
  std::vector<std::vector<double>> sd_patterns;  // empty: single scenario
};
ScenarioFile scenario_from_json(const std::string& text);

// One CSV row per scenario: sizes, sds, global rate, per-contrast rates.
void write_sim_csv(std::ostream& out, const ScenarioSpec& base,
                   std::span<const std::pair<std::vector<double>, SimResult>> results);

std::string sim_results_to_json(
    const ScenarioSpec& base,
    std::span<const std::pair<std::vector<double>, SimResult>> results);

}  // namespace levdun
