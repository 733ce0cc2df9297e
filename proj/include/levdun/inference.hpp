#pragma once

#include <string>
#include <vector>

#include "levdun/anova.hpp"
#include "levdun/contrasts.hpp"
#include "levdun/dataset.hpp"
#include "levdun/mvt.hpp"

namespace levdun {

enum class ContrastKind { dunnett, grand_mean };
enum class Alternative { greater, less, two_sided };

struct TestSpec {
  ContrastKind contrast_kind = ContrastKind::dunnett;
  Alternative alternative = Alternative::two_sided;
  bool modified = false;
  double alpha = 0.05;
  MvtSettings mvt;

  void validate() const;  // alpha in (0,1) and valid mvt settings
};

struct TestRow {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double tstat = 0.0;
  double adj_p = 1.0;
  double ci_low = 0.0;   // -inf for the unbounded side
  double ci_high = 0.0;  // +inf for the unbounded side
};

struct TestReport {
  std::vector<TestRow> rows;
  double global_min_p = 1.0;
  double quantile_used = 0.0;
  long df = 0;
  CorrelationMatrix correlation;
  TestSpec spec;  // echo of the request, seed included
};

// Full Levene-Dunnett pipeline: transform (modified or plain), one-way fit,
// contrast matrix, per-contrast t statistics, single-step adjusted p-values
// under the joint multivariate t, simultaneous confidence bounds and the
// min-p global test. For Dunnett contrasts the control group is the one
// sample.control_index points at.
TestReport max_t_test(const GroupedSample& sample, const TestSpec& spec);

struct CiBound {
  double low = 0.0;
  double high = 0.0;
};

// Simultaneous bounds at level spec.alpha: estimate -/+ q* std_error with
// the equicoordinate quantile q*; one-sided alternatives leave the other
// side infinite.
std::vector<CiBound> simultaneous_ci(const FitSummary& fit, const ContrastMatrix& m,
                                     const TestSpec& spec);

// Smallest adjusted p-value; a level-alpha global test rejects iff it is
// at most alpha.
double global_min_p(const TestReport& report);

}  // namespace levdun
