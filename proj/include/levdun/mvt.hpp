#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "levdun/contrasts.hpp"
#include "levdun/matrix.hpp"

namespace levdun {

// Controls the randomized quasi-Monte Carlo evaluation of the central
// multivariate t distribution.
struct MvtSettings {
  std::size_t sample_budget = 100000;  // total points; rounded up to batches
  std::uint64_t seed = 0;
  double target_abs_error = 1e-3;
  int max_quantile_iters = 100;

  void validate() const;  // budget >= 1000, target_abs_error > 0
};

enum class Sides { one_sided, two_sided };

// L with L L^T = R. Diagonal pivots below tolerance produce a zeroed
// column (rank-deficient positive semidefinite input); a pivot that is
// genuinely negative throws NumericError.
Matrix cholesky_factor(const CorrelationMatrix& R);

struct ProbEstimate {
  double prob = 0.0;
  double est_error = 0.0;  // 3-sigma bound from the batch means
};

// Cached randomized-QMC sample of max_j T_j (one-sided) or max_j |T_j|
// (two-sided) for T ~ multivariate t(R, df). Building the object draws the
// whole point set once; probabilities and the quantile are then read off
// the same fixed stream, which makes prob_leq exactly monotone in q and
// keeps every probability and the quantile of one analysis consistent.
class MaxTDistribution {
 public:
  MaxTDistribution(const CorrelationMatrix& R, long df, Sides sides,
                   const MvtSettings& settings, int threads = 1);

  // Equicoordinate probability P(max <= q) with its 3-sigma error bound.
  ProbEstimate prob_leq(double q) const;

  // q with prob_leq(q) ~= 1 - alpha, located by bracketing + bisection on
  // the cached empirical CDF. Throws ConvergenceError if no bracket is
  // found within max_quantile_iters.
  double quantile(double alpha) const;

  std::size_t points_used() const { return points_used_; }
  long df() const { return df_; }
  Sides sides() const { return sides_; }

 private:
  std::vector<std::vector<double>> batches_;  // each sorted ascending
  std::size_t points_used_ = 0;
  long df_ = 0;
  std::size_t dim_ = 0;  // number of contrasts k
  Sides sides_ = Sides::one_sided;
  int max_quantile_iters_ = 100;
};

// One-shot wrappers around MaxTDistribution.
ProbEstimate mvt_prob(double q, const CorrelationMatrix& R, long df, Sides sides,
                      const MvtSettings& settings);
double equicoordinate_quantile(double alpha, const CorrelationMatrix& R, long df,
                               Sides sides, const MvtSettings& settings);

}  // namespace levdun
