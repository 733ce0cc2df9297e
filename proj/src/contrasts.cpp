#include "levdun/contrasts.hpp"

#include <cmath>
#include <string>

#include "levdun/errors.hpp"

namespace levdun {

void ContrastMatrix::validate() const {
  const std::size_t k = coefficients.rows();
  const std::size_t g = coefficients.cols();
  if (k == 0 || g < 2) {
    throw ArgumentError("contrast matrix needs at least one row over two groups");
  }
  if (row_labels.size() != k) {
    throw ArgumentError("row label count does not match row count");
  }
  if (group_sizes.size() != g) {
    throw ArgumentError("group size count does not match column count");
  }
  for (std::size_t r = 0; r < k; ++r) {
    double sum = 0.0;
    bool all_zero = true;
    for (std::size_t c = 0; c < g; ++c) {
      sum += coefficients(r, c);
      if (coefficients(r, c) != 0.0) all_zero = false;
    }
    if (all_zero) {
      throw ArgumentError("contrast row " + std::to_string(r) + " is all zero");
    }
    if (std::fabs(sum) > 1e-12) {
      throw ArgumentError("contrast row " + std::to_string(r) +
                          " does not sum to zero");
    }
  }
  for (std::size_t sz : group_sizes) {
    if (sz == 0) throw ArgumentError("group size must be positive");
  }
}

void CorrelationMatrix::validate() const {
  const std::size_t k = entries.rows();
  if (k == 0 || entries.cols() != k) {
    throw ArgumentError("correlation matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (std::fabs(entries(i, i) - 1.0) > 1e-9) {
      throw ArgumentError("correlation matrix diagonal must be 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::fabs(entries(i, j) - entries(j, i)) > 1e-9) {
        throw ArgumentError("correlation matrix must be symmetric");
      }
      if (std::fabs(entries(i, j)) > 1.0 + 1e-12) {
        throw ArgumentError("correlation entries must lie in [-1, 1]");
      }
    }
  }
}

ContrastMatrix dunnett_matrix(std::span<const std::size_t> group_sizes) {
  const std::size_t g = group_sizes.size();
  if (g < 2) {
    throw ArgumentError("Dunnett contrasts need at least 2 groups");
  }
  ContrastMatrix m;
  m.coefficients = Matrix(g - 1, g);
  m.group_sizes.assign(group_sizes.begin(), group_sizes.end());
  for (std::size_t j = 1; j < g; ++j) {
    m.coefficients(j - 1, 0) = -1.0;
    m.coefficients(j - 1, j) = 1.0;
    m.row_labels.push_back("T" + std::to_string(j) + " - T0");
  }
  m.validate();
  return m;
}

ContrastMatrix grand_mean_matrix(std::span<const std::size_t> group_sizes) {
  const std::size_t g = group_sizes.size();
  if (g < 2) {
    throw ArgumentError("grand-mean contrasts need at least 2 groups");
  }
  double total = 0.0;
  for (std::size_t sz : group_sizes) total += static_cast<double>(sz);
  ContrastMatrix m;
  m.coefficients = Matrix(g, g);
  m.group_sizes.assign(group_sizes.begin(), group_sizes.end());
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      const double w = static_cast<double>(group_sizes[j]) / total;
      m.coefficients(i, j) = (i == j) ? 1.0 - w : -w;
    }
    m.row_labels.push_back("T" + std::to_string(i) + " - grand mean");
  }
  m.validate();
  return m;
}

CorrelationMatrix correlation_from_contrasts(const ContrastMatrix& m) {
  m.validate();
  const std::size_t k = m.coefficients.rows();
  const std::size_t g = m.coefficients.cols();

  auto cross = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      s += m.coefficients(a, i) * m.coefficients(b, i) /
           static_cast<double>(m.group_sizes[i]);
    }
    return s;
  };

  std::vector<double> norms(k);
  for (std::size_t a = 0; a < k; ++a) {
    norms[a] = cross(a, a);
    if (norms[a] <= 0.0) {
      throw ArgumentError("contrast row " + std::to_string(a) +
                          " has zero variance weight");
    }
  }

  CorrelationMatrix r;
  r.entries = Matrix(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    r.entries(a, a) = 1.0;
    for (std::size_t b = 0; b < a; ++b) {
      const double v = cross(a, b) / std::sqrt(norms[a] * norms[b]);
      r.entries(a, b) = v;
      r.entries(b, a) = v;
    }
  }
  r.validate();
  return r;
}

}  // namespace levdun
