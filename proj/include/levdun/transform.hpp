#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "levdun/dataset.hpp"

namespace levdun {

// Absolute deviations from the group median, per group. trimmed_counts
// records how many observations the modified variant removed (0 or 1 per
// group); original_sizes are the pre-transform group sizes.
struct TransformedSample {
  std::vector<Group> groups;
  std::vector<std::size_t> trimmed_counts;
  std::vector<std::size_t> original_sizes;
};

// Sample median: middle order statistic for odd n, midpoint of the two
// middle order statistics for even n. Throws ArgumentError on an empty list.
double group_median(std::span<const double> values);

// Z_ji = |Y_ji - median(Y_j)| with each group's own median.
TransformedSample levene_transform(const GroupedSample& sample);

// levene_transform, then in every group of odd original size the single
// guaranteed zero deviation (the median's own observation) is removed.
// Even-sized groups are untouched, even when ties produce zeros there.
// Throws DegenerateGroupError for an odd group of size 1.
TransformedSample modified_levene_transform(const GroupedSample& sample);

}  // namespace levdun
