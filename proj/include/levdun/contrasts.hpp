#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "levdun/matrix.hpp"

namespace levdun {

// Rows of contrast coefficients over the group means, with the per-group
// sample sizes the coefficients refer to.
struct ContrastMatrix {
  Matrix coefficients;                  // k rows x (k+1)-or-more columns
  std::vector<std::string> row_labels;  // one per row
  std::vector<std::size_t> group_sizes; // one per column

  // Rows sum to 0 (within 1e-12), no all-zero row, label/size counts match.
  void validate() const;
};

// Correlation of the contrast estimates under homoscedastic errors.
struct CorrelationMatrix {
  Matrix entries;

  // Square, symmetric, unit diagonal, entries in [-1, 1].
  void validate() const;
};

// Many-to-one rows: -1 on the control (column 0), +1 on one treatment.
// Rows are ordered by ascending treatment index, labelled "T1 - T0", ...
ContrastMatrix dunnett_matrix(std::span<const std::size_t> group_sizes);

// One row per group comparing it to the size-weighted grand mean:
// c_ii = 1 - n_i/N, c_ij = -n_j/N. Applied to the mean vector this gives
// mu_i - sum_j(n_j mu_j)/N.
ContrastMatrix grand_mean_matrix(std::span<const std::size_t> group_sizes);

// R[a][b] = sum_i(c_i^a c_i^b / n_i) normalised by the row norms.
CorrelationMatrix correlation_from_contrasts(const ContrastMatrix& m);

}  // namespace levdun
