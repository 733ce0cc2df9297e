#include "levdun/anova.hpp"

#include <cmath>
#include <string>

#include "levdun/dist.hpp"
#include "levdun/errors.hpp"

namespace levdun {

FitSummary fit_oneway(const TransformedSample& t) {
  if (t.groups.size() < 2) {
    throw ArgumentError("fit needs at least 2 groups");
  }
  FitSummary fit;
  std::size_t total = 0;
  double ss_within = 0.0;
  for (const auto& g : t.groups) {
    if (g.values.empty()) {
      throw ArgumentError("group '" + g.label + "' is empty");
    }
    double mean = 0.0;
    for (double z : g.values) mean += z;
    mean /= static_cast<double>(g.values.size());
    for (double z : g.values) ss_within += (z - mean) * (z - mean);
    fit.group_means.push_back(mean);
    fit.group_sizes.push_back(g.values.size());
    total += g.values.size();
  }
  fit.df_resid = static_cast<long>(total) - static_cast<long>(t.groups.size());
  if (fit.df_resid < 1) {
    throw InsufficientDataError("residual degrees of freedom " +
                                std::to_string(fit.df_resid) + " < 1");
  }
  fit.pooled_sd = std::sqrt(ss_within / static_cast<double>(fit.df_resid));
  return fit;
}

ContrastEstimate contrast_estimate(const FitSummary& fit, const ContrastMatrix& m,
                                   std::size_t row) {
  if (row >= m.coefficients.rows()) {
    throw ArgumentError("contrast row index out of range");
  }
  if (m.coefficients.cols() != fit.group_means.size() ||
      m.group_sizes != fit.group_sizes) {
    throw ArgumentError("contrast matrix group sizes do not match the fit");
  }
  if (fit.pooled_sd == 0.0) {
    throw DegenerateFitError("pooled standard deviation is zero");
  }
  ContrastEstimate e;
  double weight = 0.0;
  for (std::size_t i = 0; i < fit.group_means.size(); ++i) {
    const double c = m.coefficients(row, i);
    e.estimate += c * fit.group_means[i];
    weight += c * c / static_cast<double>(fit.group_sizes[i]);
  }
  e.std_error = fit.pooled_sd * std::sqrt(weight);
  e.tstat = e.estimate / e.std_error;
  return e;
}

FTestResult brown_forsythe_f(const TransformedSample& t) {
  const FitSummary fit = fit_oneway(t);
  const std::size_t g = fit.group_means.size();

  double total_n = 0.0;
  double grand = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    grand += fit.group_means[i] * static_cast<double>(fit.group_sizes[i]);
    total_n += static_cast<double>(fit.group_sizes[i]);
  }
  grand /= total_n;

  double ss_between = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double d = fit.group_means[i] - grand;
    ss_between += static_cast<double>(fit.group_sizes[i]) * d * d;
  }
  const double ss_within =
      fit.pooled_sd * fit.pooled_sd * static_cast<double>(fit.df_resid);

  FTestResult r;
  r.df1 = static_cast<long>(g) - 1;
  r.df2 = fit.df_resid;
  if (ss_within == 0.0) {
    throw DegenerateFitError("no within-group variation in the transformed data");
  }
  r.fstat = (ss_between / static_cast<double>(r.df1)) /
            (ss_within / static_cast<double>(r.df2));
  r.pvalue = dist::f_upper_p(r.fstat, static_cast<double>(r.df1),
                             static_cast<double>(r.df2));
  return r;
}

}  // namespace levdun
