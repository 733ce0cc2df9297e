#include "levdun/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levdun/errors.hpp"
#include "levdun/transform.hpp"

namespace levdun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Sides sides_of(Alternative alt) {
  return alt == Alternative::two_sided ? Sides::two_sided : Sides::one_sided;
}

// The statistic whose max-CDF position gives the adjusted p-value.
double oriented_t(double t, Alternative alt) {
  switch (alt) {
    case Alternative::greater: return t;
    case Alternative::less: return -t;
    case Alternative::two_sided: return std::fabs(t);
  }
  return t;
}

ContrastMatrix build_matrix(ContrastKind kind, const std::vector<std::size_t>& sizes) {
  return kind == ContrastKind::dunnett ? dunnett_matrix(sizes)
                                       : grand_mean_matrix(sizes);
}

CiBound bound_for(const ContrastEstimate& e, double q, Alternative alt) {
  switch (alt) {
    case Alternative::greater:
      return {e.estimate - q * e.std_error, kInf};
    case Alternative::less:
      return {-kInf, e.estimate + q * e.std_error};
    case Alternative::two_sided:
      return {e.estimate - q * e.std_error, e.estimate + q * e.std_error};
  }
  return {};
}

}  // namespace

void TestSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
  mvt.validate();
}

TestReport max_t_test(const GroupedSample& sample, const TestSpec& spec) {
  spec.validate();
  sample.validate();

  // Contrast builders index the control as group 0.
  GroupedSample ordered = sample;
  if (ordered.control_index != 0) {
    std::rotate(ordered.groups.begin(), ordered.groups.begin() + ordered.control_index,
                ordered.groups.begin() + ordered.control_index + 1);
    ordered.control_index = 0;
  }

  const TransformedSample z =
      spec.modified ? modified_levene_transform(ordered) : levene_transform(ordered);
  const FitSummary fit = fit_oneway(z);
  ContrastMatrix matrix = build_matrix(spec.contrast_kind, fit.group_sizes);

  // Replace the generic builder labels with the data's group labels.
  for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
    if (spec.contrast_kind == ContrastKind::dunnett) {
      matrix.row_labels[r] =
          ordered.groups[r + 1].label + " - " + ordered.groups[0].label;
    } else {
      matrix.row_labels[r] = ordered.groups[r].label + " - grand mean";
    }
  }

  TestReport report;
  report.spec = spec;
  report.df = fit.df_resid;
  report.correlation = correlation_from_contrasts(matrix);

  const MaxTDistribution dist(report.correlation, fit.df_resid,
                              sides_of(spec.alternative), spec.mvt);
  report.quantile_used = dist.quantile(spec.alpha);

  report.global_min_p = 1.0;
  for (std::size_t r = 0; r < matrix.coefficients.rows(); ++r) {
    const ContrastEstimate e = contrast_estimate(fit, matrix, r);
    TestRow row;
    row.label = matrix.row_labels[r];
    row.estimate = e.estimate;
    row.std_error = e.std_error;
    row.tstat = e.tstat;
    const double p = 1.0 - dist.prob_leq(oriented_t(e.tstat, spec.alternative)).prob;
    row.adj_p = std::clamp(p, 0.0, 1.0);
    const CiBound ci = bound_for(e, report.quantile_used, spec.alternative);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    report.global_min_p = std::min(report.global_min_p, row.adj_p);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<CiBound> simultaneous_ci(const FitSummary& fit, const ContrastMatrix& m,
                                     const TestSpec& spec) {
  spec.validate();
  const CorrelationMatrix R = correlation_from_contrasts(m);
  const MaxTDistribution dist(R, fit.df_resid, sides_of(spec.alternative), spec.mvt);
  const double q = dist.quantile(spec.alpha);

  std::vector<CiBound> out;
  out.reserve(m.coefficients.rows());
  for (std::size_t r = 0; r < m.coefficients.rows(); ++r) {
    out.push_back(bound_for(contrast_estimate(fit, m, r), q, spec.alternative));
  }
  return out;
}

double global_min_p(const TestReport& report) {
  if (report.rows.empty()) {
    throw ArgumentError("report has no contrast rows");
  }
  double m = 1.0;
  for (const auto& row : report.rows) m = std::min(m, row.adj_p);
  return m;
}

}  // namespace levdun
