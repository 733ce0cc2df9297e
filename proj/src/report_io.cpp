#include "levdun/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "levdun/errors.hpp"

namespace levdun {

namespace {

using nlohmann::json;

// Shortest round-trip decimal representation.
std::string full_precision(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json bound_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

std::string sig4(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string to_string(ContrastKind kind) {
  return kind == ContrastKind::dunnett ? "dunnett" : "grand_mean";
}

std::string to_string(Alternative alt) {
  switch (alt) {
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
    case Alternative::two_sided: return "two_sided";
  }
  return "two_sided";
}

ContrastKind contrast_kind_from_string(const std::string& s) {
  if (s == "dunnett") return ContrastKind::dunnett;
  if (s == "grand_mean" || s == "grandmean") return ContrastKind::grand_mean;
  throw ArgumentError("unknown contrast kind '" + s + "'");
}

Alternative alternative_from_string(const std::string& s) {
  if (s == "greater") return Alternative::greater;
  if (s == "less") return Alternative::less;
  if (s == "two_sided" || s == "two-sided" || s == "two.sided") {
    return Alternative::two_sided;
  }
  throw ArgumentError("unknown alternative '" + s + "'");
}

std::string report_to_json(const TestReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"label", r.label},
                    {"estimate", r.estimate},
                    {"stderr", r.std_error},
                    {"tstat", r.tstat},
                    {"adj_p", r.adj_p},
                    {"ci_low", bound_to_json(r.ci_low)},
                    {"ci_high", bound_to_json(r.ci_high)}});
  }

  const std::size_t k = report.correlation.entries.rows();
  json corr = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k; ++j) row.push_back(report.correlation.entries(i, j));
    corr.push_back(std::move(row));
  }

  json doc = {{"rows", rows},
              {"global_min_p", report.global_min_p},
              {"quantile_used", report.quantile_used},
              {"df", report.df},
              {"correlation", corr},
              {"spec",
               {{"contrast_kind", to_string(report.spec.contrast_kind)},
                {"alternative", to_string(report.spec.alternative)},
                {"modified", report.spec.modified},
                {"alpha", report.spec.alpha},
                {"seed", report.spec.mvt.seed},
                {"sample_budget", report.spec.mvt.sample_budget}}}};
  return doc.dump(2) + "\n";
}

void write_report_table(std::ostream& out, const TestReport& report) {
  std::size_t label_w = 8;
  for (const auto& r : report.rows) label_w = std::max(label_w, r.label.size());

  auto cell = [&](const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = s.size(); i < w + 2; ++i) out << ' ';
  };

  cell("contrast", label_w);
  for (const char* h : {"estimate", "std.err", "t value", "adj.p", "lower", "upper"}) {
    cell(h, 9);
  }
  out << '\n';
  for (const auto& r : report.rows) {
    cell(r.label, label_w);
    cell(sig4(r.estimate), 9);
    cell(sig4(r.std_error), 9);
    cell(sig4(r.tstat), 9);
    cell(sig4(r.adj_p), 9);
    cell(sig4(r.ci_low), 9);
    cell(sig4(r.ci_high), 9);
    out << '\n';
  }
  out << "global min-p: " << sig4(report.global_min_p) << '\n';
  out << "quantile: " << sig4(report.quantile_used) << "  df: " << report.df
      << "  alpha: " << sig4(report.spec.alpha)
      << "  alternative: " << to_string(report.spec.alternative)
      << "  contrasts: " << to_string(report.spec.contrast_kind)
      << (report.spec.modified ? "  (zero-trimmed)" : "") << '\n';
  out << "seed: " << report.spec.mvt.seed
      << "  mvt budget: " << report.spec.mvt.sample_budget << '\n';
}

void write_ci_csv(std::ostream& out, const TestReport& report) {
  out << "label,estimate,lower,upper\n";
  auto bound = [](double v) {
    if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
    return full_precision(v);
  };
  for (const auto& r : report.rows) {
    out << r.label << ',' << full_precision(r.estimate) << ',' << bound(r.ci_low)
        << ',' << bound(r.ci_high) << '\n';
  }
}

}  // namespace levdun
