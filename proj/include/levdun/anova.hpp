#pragma once

#include <cstddef>
#include <vector>

#include "levdun/contrasts.hpp"
#include "levdun/transform.hpp"

namespace levdun {

// One-way fit of the transformed data: group means, pooled standard
// deviation and residual degrees of freedom N' - (k+1), where N' counts
// post-trim observations.
struct FitSummary {
  std::vector<double> group_means;
  std::vector<std::size_t> group_sizes;
  double pooled_sd = 0.0;
  long df_resid = 0;
};

// Throws InsufficientDataError when df_resid would drop below 1. A zero
// pooled SD is legal here; contrast_estimate rejects it.
FitSummary fit_oneway(const TransformedSample& t);

struct ContrastEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double tstat = 0.0;
};

// estimate = sum_i c_i ybar_i, std_error = S sqrt(sum_i c_i^2/n_i).
// Throws DegenerateFitError when S = 0, ArgumentError on size mismatch.
ContrastEstimate contrast_estimate(const FitSummary& fit, const ContrastMatrix& m,
                                   std::size_t row);

struct FTestResult {
  double fstat = 0.0;
  long df1 = 0;
  long df2 = 0;
  double pvalue = 1.0;
};

// Global one-way ANOVA F test on the transformed values (the Brown-Forsythe
// variance test when fed the plain Levene transform).
FTestResult brown_forsythe_f(const TransformedSample& t);

}  // namespace levdun
