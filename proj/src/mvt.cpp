#include "levdun/mvt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "levdun/dist.hpp"
#include "levdun/errors.hpp"
#include "levdun/rng.hpp"

namespace levdun {

namespace {

constexpr std::size_t kBatches = 32;
constexpr double kPivotTol = 1e-10;

// First d primes, for the Richtmyer direction numbers.
std::vector<std::uint64_t> first_primes(std::size_t d) {
  std::vector<std::uint64_t> primes;
  std::uint64_t candidate = 2;
  while (primes.size() < d) {
    bool is_prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

double frac(double x) { return x - std::floor(x); }

// Open-interval clamp so the inverse CDFs stay finite.
double clamp01(double u) {
  constexpr double lo = 1e-15;
  constexpr double hi = 1.0 - 1e-16;
  return std::min(std::max(u, lo), hi);
}

void run_workers(std::size_t jobs, int threads, const std::function<void(std::size_t)>& work) {
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs) return;
      work(j);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(jobs));
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
}

}  // namespace

void MvtSettings::validate() const {
  if (sample_budget < 1000) {
    throw ArgumentError("mvt sample budget must be at least 1000");
  }
  if (!(target_abs_error > 0.0)) {
    throw ArgumentError("mvt target_abs_error must be positive");
  }
  if (max_quantile_iters < 1) {
    throw ArgumentError("max_quantile_iters must be at least 1");
  }
}

Matrix cholesky_factor(const CorrelationMatrix& R) {
  R.validate();
  const std::size_t k = R.entries.rows();
  Matrix L(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double d = R.entries(j, j);
    for (std::size_t s = 0; s < j; ++s) d -= L(j, s) * L(j, s);
    if (d <= kPivotTol) {
      if (d < -kPivotTol) {
        throw NumericError("matrix is not positive semidefinite (pivot " +
                           std::to_string(d) + " at column " + std::to_string(j) + ")");
      }
      // Rank-deficient but consistent column: leave it zero. Rows below must
      // then have a zero residual against this column.
      for (std::size_t i = j + 1; i < k; ++i) {
        double r = R.entries(i, j);
        for (std::size_t s = 0; s < j; ++s) r -= L(i, s) * L(j, s);
        if (std::fabs(r) > 1e-8) {
          throw NumericError("matrix is not positive semidefinite (inconsistent "
                             "rank deficiency at column " + std::to_string(j) + ")");
        }
      }
      continue;
    }
    L(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < k; ++i) {
      double r = R.entries(i, j);
      for (std::size_t s = 0; s < j; ++s) r -= L(i, s) * L(j, s);
      L(i, j) = r / L(j, j);
    }
  }
  return L;
}

MaxTDistribution::MaxTDistribution(const CorrelationMatrix& R, long df, Sides sides,
                                   const MvtSettings& settings, int threads)
    : df_(df), sides_(sides), max_quantile_iters_(settings.max_quantile_iters) {
  settings.validate();
  if (df < 1) throw ArgumentError("df must be at least 1");
  const Matrix L = cholesky_factor(R);
  dim_ = L.rows();
  const std::size_t k = dim_;

  const std::size_t per_batch = (settings.sample_budget + kBatches - 1) / kBatches;
  points_used_ = per_batch * kBatches;

  // Richtmyer sequence directions: coordinate 0 drives the chi divisor,
  // coordinates 1..k the correlated normals. Keeping the chi coordinate
  // first makes the cached sample of a leading principal submatrix a
  // pointwise lower bound of the full one (same seed), which is what the
  // monotone-in-k behaviour of the quantile rests on.
  const auto primes = first_primes(k + 1);
  std::vector<double> alpha(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    alpha[j] = frac(std::sqrt(static_cast<double>(primes[j])));
  }

  const double inv_sqrt_df = 1.0 / std::sqrt(static_cast<double>(df));
  batches_.assign(kBatches, {});

  auto build_batch = [&](std::size_t b) {
    CounterRng shift_rng(substream_key(settings.seed, b));
    std::vector<double> shift(k + 1);
    for (std::size_t j = 0; j <= k; ++j) shift[j] = shift_rng.uniform(j);

    std::vector<double> z(k);
    std::vector<double>& ms = batches_[b];
    ms.resize(per_batch);
    for (std::size_t i = 0; i < per_batch; ++i) {
      const double step = static_cast<double>(i + 1);
      const double u0 = clamp01(frac(step * alpha[0] + shift[0]));
      const double scale =
          dist::chi_quantile(u0, static_cast<double>(df_)) * inv_sqrt_df;
      for (std::size_t j = 0; j < k; ++j) {
        z[j] = dist::normal_quantile(clamp01(frac(step * alpha[j + 1] + shift[j + 1])));
      }
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t row = 0; row < k; ++row) {
        double x = 0.0;
        for (std::size_t col = 0; col <= row; ++col) x += L(row, col) * z[col];
        if (sides == Sides::two_sided) x = std::fabs(x);
        m = std::max(m, x);
      }
      ms[i] = m / scale;
    }
    std::sort(ms.begin(), ms.end());
  };

  run_workers(kBatches, threads, build_batch);
}

ProbEstimate MaxTDistribution::prob_leq(double q) const {
  std::size_t total = 0;
  double mean = 0.0;
  std::vector<double> props(batches_.size());
  for (std::size_t b = 0; b < batches_.size(); ++b) {
    const auto& ms = batches_[b];
    const auto count = static_cast<std::size_t>(
        std::upper_bound(ms.begin(), ms.end(), q) - ms.begin());
    total += count;
    props[b] = static_cast<double>(count) / static_cast<double>(ms.size());
    mean += props[b];
  }
  mean /= static_cast<double>(batches_.size());
  double var = 0.0;
  for (double p : props) var += (p - mean) * (p - mean);
  var /= static_cast<double>(batches_.size() - 1);

  ProbEstimate e;
  e.prob = static_cast<double>(total) / static_cast<double>(points_used_);
  e.est_error = 3.0 * std::sqrt(var / static_cast<double>(batches_.size()));
  return e;
}

double MaxTDistribution::quantile(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
  const double target = 1.0 - alpha;
  const double dfd = static_cast<double>(df_);
  const double k = static_cast<double>(dim_);

  // Univariate quantile is a lower bound for the max; the Bonferroni
  // quantile at alpha/(2k) an upper bound for either sidedness.
  double lo = dist::t_quantile(target, dfd);
  double hi = dist::t_quantile(1.0 - alpha / (2.0 * k), dfd);
  if (sides_ == Sides::two_sided) lo = std::max(lo, 0.0);

  int iters = 0;
  while (prob_leq(lo).prob >= target) {
    lo -= std::max(1.0, 0.5 * std::fabs(lo));
    if (++iters > max_quantile_iters_) {
      throw ConvergenceError("failed to bracket the quantile from below");
    }
  }
  iters = 0;
  while (prob_leq(hi).prob < target) {
    hi += std::max(1.0, 0.5 * std::fabs(hi));
    if (++iters > max_quantile_iters_) {
      throw ConvergenceError("failed to bracket the quantile from above");
    }
  }

  // Bisect the cached empirical CDF: it is a monotone step function, so the
  // bracket collapses onto the jump that crosses the target level.
  for (int it = 0; it < max_quantile_iters_; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point width
    if (prob_leq(mid).prob >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ProbEstimate mvt_prob(double q, const CorrelationMatrix& R, long df, Sides sides,
                      const MvtSettings& settings) {
  return MaxTDistribution(R, df, sides, settings).prob_leq(q);
}

double equicoordinate_quantile(double alpha, const CorrelationMatrix& R, long df,
                               Sides sides, const MvtSettings& settings) {
  return MaxTDistribution(R, df, sides, settings).quantile(alpha);
}

}  // namespace levdun
