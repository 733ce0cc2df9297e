#include "levdun/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "levdun/dist.hpp"
#include "levdun/errors.hpp"
#include "levdun/report_io.hpp"
#include "levdun/rng.hpp"
#include "levdun/transform.hpp"

namespace levdun {

namespace {

// Decouples the data-generation stream from the MVT stream, which reuses
// the scenario seed directly.
constexpr std::uint64_t kDataStreamSalt = 0xD1B54A32D192ED03ull;

struct Design {
  std::vector<std::size_t> draw_sizes;      // observations per group
  std::vector<std::size_t> eff_sizes;       // after trimming
  Matrix coefficients;                      // contrast rows
  std::vector<double> row_weights;          // sqrt(sum c^2 / n) per row
  double critical = 0.0;                    // reject iff oriented t >= critical
  long df = 0;
  Alternative alternative = Alternative::greater;
  bool modified = false;
};

Design make_design(const ScenarioSpec& spec) {
  Design d;
  d.draw_sizes = spec.group_sizes;
  d.alternative = spec.alternative;
  d.modified = spec.modified;

  d.eff_sizes = spec.group_sizes;
  if (spec.modified) {
    for (auto& n : d.eff_sizes) {
      if (n % 2 == 1) --n;
    }
  }
  std::size_t total = 0;
  for (std::size_t n : d.eff_sizes) total += n;
  d.df = static_cast<long>(total) - static_cast<long>(d.eff_sizes.size());
  if (d.df < 1) {
    throw InsufficientDataError("scenario leaves fewer than 1 residual degree "
                                "of freedom after trimming");
  }

  const ContrastMatrix m = spec.contrast_kind == ContrastKind::dunnett
                               ? dunnett_matrix(d.eff_sizes)
                               : grand_mean_matrix(d.eff_sizes);
  d.coefficients = m.coefficients;
  for (std::size_t r = 0; r < m.coefficients.rows(); ++r) {
    double w = 0.0;
    for (std::size_t i = 0; i < m.coefficients.cols(); ++i) {
      const double c = m.coefficients(r, i);
      w += c * c / static_cast<double>(d.eff_sizes[i]);
    }
    d.row_weights.push_back(std::sqrt(w));
  }

  if (spec.alpha == 0.0) {
    d.critical = std::numeric_limits<double>::infinity();
  } else {
    const CorrelationMatrix R = correlation_from_contrasts(m);
    const Sides sides = spec.alternative == Alternative::two_sided
                            ? Sides::two_sided
                            : Sides::one_sided;
    MvtSettings settings;
    settings.seed = spec.seed;
    const MaxTDistribution dist(R, d.df, sides, settings);
    d.critical = dist.quantile(spec.alpha);
  }
  return d;
}

double oriented(double t, Alternative alt) {
  switch (alt) {
    case Alternative::greater: return t;
    case Alternative::less: return -t;
    case Alternative::two_sided: return std::fabs(t);
  }
  return t;
}

struct Tally {
  std::uint64_t global = 0;
  std::vector<std::uint64_t> per_contrast;
  std::uint64_t degenerate = 0;
};

// One synthetic replication: returns false when the pooled SD degenerates.
bool replicate(const Design& d, const ScenarioSpec& spec, std::uint64_t stream_id,
               std::vector<double>& ybuf, std::vector<double>& zbuf,
               std::vector<double>& means, std::vector<char>& reject) {
  const CounterRng rng(substream_key(mix64(spec.seed) ^ kDataStreamSalt, stream_id));
  const std::size_t groups = d.draw_sizes.size();

  std::uint64_t ctr = 0;
  double ss_within = 0.0;
  for (std::size_t i = 0; i < groups; ++i) {
    const std::size_t n = d.draw_sizes[i];
    ybuf.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      ybuf[t] = spec.group_sds[i] * dist::normal_quantile(rng.uniform(ctr++));
    }
    std::sort(ybuf.begin(), ybuf.end());
    const double med = (n % 2 == 1) ? ybuf[n / 2]
                                    : (ybuf[n / 2 - 1] + ybuf[n / 2]) / 2.0;

    zbuf.clear();
    for (double y : ybuf) zbuf.push_back(std::fabs(y - med));
    if (d.modified && n % 2 == 1) {
      zbuf.erase(std::find(zbuf.begin(), zbuf.end(), 0.0));
    }

    double mean = 0.0;
    for (double z : zbuf) mean += z;
    mean /= static_cast<double>(zbuf.size());
    for (double z : zbuf) ss_within += (z - mean) * (z - mean);
    means[i] = mean;
  }

  if (ss_within == 0.0) return false;
  const double s = std::sqrt(ss_within / static_cast<double>(d.df));

  for (std::size_t r = 0; r < d.coefficients.rows(); ++r) {
    double est = 0.0;
    for (std::size_t i = 0; i < groups; ++i) est += d.coefficients(r, i) * means[i];
    const double t = est / (s * d.row_weights[r]);
    reject[r] = oriented(t, d.alternative) >= d.critical ? 1 : 0;
  }
  return true;
}

SimResult run_with_offset(const ScenarioSpec& spec, std::uint64_t stream_offset,
                          int threads) {
  spec.validate();
  const Design design = make_design(spec);
  const std::size_t k = design.coefficients.rows();

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), spec.replications));
  std::vector<Tally> tallies(std::max(workers, 1));
  for (auto& t : tallies) t.per_contrast.assign(k, 0);

  std::atomic<std::size_t> next{0};
  auto work = [&](int w) {
    Tally& tally = tallies[w];
    std::vector<double> ybuf, zbuf;
    std::vector<double> means(design.draw_sizes.size());
    std::vector<char> reject(k);
    while (true) {
      const std::size_t r = next.fetch_add(1);
      if (r >= spec.replications) return;
      if (!replicate(design, spec, stream_offset + r, ybuf, zbuf, means, reject)) {
        ++tally.degenerate;
        continue;
      }
      bool any = false;
      for (std::size_t c = 0; c < k; ++c) {
        if (reject[c]) {
          ++tally.per_contrast[c];
          any = true;
        }
      }
      if (any) ++tally.global;
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Tally total;
  total.per_contrast.assign(k, 0);
  for (const auto& t : tallies) {
    total.global += t.global;
    total.degenerate += t.degenerate;
    for (std::size_t c = 0; c < k; ++c) total.per_contrast[c] += t.per_contrast[c];
  }

  SimResult result;
  result.error_replications = total.degenerate;
  result.replications_used = spec.replications - total.degenerate;
  const double denom = result.replications_used > 0
                           ? static_cast<double>(result.replications_used)
                           : 1.0;
  result.global_rejection_rate = static_cast<double>(total.global) / denom;
  for (std::size_t c = 0; c < k; ++c) {
    result.per_contrast_rejection_rates.push_back(
        static_cast<double>(total.per_contrast[c]) / denom);
  }
  return result;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (group_sizes.size() < 2) {
    throw ArgumentError("scenario needs at least 2 groups");
  }
  if (group_sizes.size() != group_sds.size()) {
    throw ArgumentError("group_sizes and group_sds lengths differ");
  }
  for (std::size_t n : group_sizes) {
    if (n < 1) throw ArgumentError("group sizes must be positive");
    if (modified && n == 1) {
      throw ArgumentError("modified transform cannot trim a group of size 1");
    }
  }
  for (double sd : group_sds) {
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw ArgumentError("group standard deviations must be positive");
    }
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ArgumentError("alpha must lie in [0, 1)");
  }
  if (replications < 1) {
    throw ArgumentError("replications must be at least 1");
  }
}

SimResult run_scenario(const ScenarioSpec& spec, int threads) {
  return run_with_offset(spec, 0, threads);
}

std::vector<std::pair<std::vector<double>, SimResult>> run_power_grid(
    const ScenarioSpec& base, std::span<const std::vector<double>> sd_patterns,
    int threads) {
  base.validate();
  std::vector<std::pair<std::vector<double>, SimResult>> out;
  out.reserve(sd_patterns.size());
  for (std::size_t p = 0; p < sd_patterns.size(); ++p) {
    ScenarioSpec spec = base;
    spec.group_sds = sd_patterns[p];
    if (spec.group_sds.size() != spec.group_sizes.size()) {
      throw ArgumentError("sd pattern " + std::to_string(p) +
                          " does not match the group count");
    }
    const std::uint64_t offset = static_cast<std::uint64_t>(p) * base.replications;
    out.emplace_back(sd_patterns[p], run_with_offset(spec, offset, threads));
  }
  return out;
}

namespace {

using nlohmann::json;

std::vector<double> sd_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(std::string(what) + " must be a nonempty array");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must be numeric");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ScenarioFile scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario JSON must be an object");

  ScenarioFile file;
  ScenarioSpec& s = file.spec;
  if (!doc.contains("group_sizes") || !doc.contains("group_sds")) {
    throw SchemaError("scenario JSON needs group_sizes and group_sds");
  }
  for (const auto& v : doc["group_sizes"]) {
    if (!v.is_number_unsigned()) {
      throw ParseError("group_sizes must be positive integers");
    }
    s.group_sizes.push_back(v.get<std::size_t>());
  }
  s.group_sds = sd_vector(doc["group_sds"], "group_sds");
  if (doc.contains("alternative")) {
    s.alternative = alternative_from_string(doc["alternative"].get<std::string>());
  }
  if (doc.contains("contrast_kind")) {
    s.contrast_kind = contrast_kind_from_string(doc["contrast_kind"].get<std::string>());
  }
  if (doc.contains("modified")) s.modified = doc["modified"].get<bool>();
  if (doc.contains("alpha")) s.alpha = doc["alpha"].get<double>();
  if (doc.contains("replications")) {
    s.replications = doc["replications"].get<std::size_t>();
  }
  if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("sd_patterns")) {
    for (const auto& p : doc["sd_patterns"]) {
      file.sd_patterns.push_back(sd_vector(p, "sd_patterns entry"));
    }
  }
  s.validate();
  return file;
}

void write_sim_csv(std::ostream& out, const ScenarioSpec& base,
                   std::span<const std::pair<std::vector<double>, SimResult>> results) {
  const std::size_t g = base.group_sizes.size();
  for (std::size_t i = 0; i < g; ++i) out << "n_" << i << ',';
  for (std::size_t i = 0; i < g; ++i) out << "sd_" << i << ',';
  out << "global_rate";
  if (!results.empty()) {
    for (std::size_t c = 0; c < results.front().second.per_contrast_rejection_rates.size(); ++c) {
      out << ",rate_" << c + 1;
    }
  }
  out << ",replications_used,error_replications\n";

  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const auto& [sds, res] : results) {
    for (std::size_t i = 0; i < g; ++i) out << base.group_sizes[i] << ',';
    for (std::size_t i = 0; i < g; ++i) out << num(sds[i]) << ',';
    out << num(res.global_rejection_rate);
    for (double r : res.per_contrast_rejection_rates) out << ',' << num(r);
    out << ',' << res.replications_used << ',' << res.error_replications << '\n';
  }
}

std::string sim_results_to_json(
    const ScenarioSpec& base,
    std::span<const std::pair<std::vector<double>, SimResult>> results) {
  json arr = json::array();
  for (const auto& [sds, res] : results) {
    arr.push_back({{"group_sizes", base.group_sizes},
                   {"group_sds", sds},
                   {"global_rejection_rate", res.global_rejection_rate},
                   {"per_contrast_rejection_rates", res.per_contrast_rejection_rates},
                   {"replications_used", res.replications_used},
                   {"error_replications", res.error_replications}});
  }
  json doc = {{"alternative", to_string(base.alternative)},
              {"contrast_kind", to_string(base.contrast_kind)},
              {"modified", base.modified},
              {"alpha", base.alpha},
              {"replications", base.replications},
              {"seed", base.seed},
              {"results", arr}};
  return doc.dump(2) + "\n";
}

}  // namespace levdun
