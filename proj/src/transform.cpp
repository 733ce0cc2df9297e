#include "levdun/transform.hpp"

#include <algorithm>
#include <cmath>

#include "levdun/errors.hpp"

namespace levdun {

double group_median(std::span<const double> values) {
  if (values.empty()) {
    throw ArgumentError("median of an empty list");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

TransformedSample levene_transform(const GroupedSample& sample) {
  sample.validate();
  TransformedSample out;
  out.groups.reserve(sample.groups.size());
  for (const auto& g : sample.groups) {
    const double med = group_median(g.values);
    Group z{g.label, {}};
    z.values.reserve(g.values.size());
    for (double y : g.values) z.values.push_back(std::fabs(y - med));
    out.groups.push_back(std::move(z));
    out.trimmed_counts.push_back(0);
    out.original_sizes.push_back(g.values.size());
  }
  return out;
}

TransformedSample modified_levene_transform(const GroupedSample& sample) {
  TransformedSample out = levene_transform(sample);
  for (std::size_t j = 0; j < out.groups.size(); ++j) {
    if (out.original_sizes[j] % 2 == 0) continue;
    if (out.original_sizes[j] == 1) {
      throw DegenerateGroupError("group '" + out.groups[j].label +
                                 "' has a single observation; removing its "
                                 "zero deviation would empty it");
    }
    // Odd n makes the median a data point, so one deviation is exactly 0.
    // Ties may produce several zeros; exactly one is removed.
    auto& z = out.groups[j].values;
    auto it = std::find(z.begin(), z.end(), 0.0);
    z.erase(it);
    out.trimmed_counts[j] = 1;
  }
  return out;
}

}  // namespace levdun
