#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace levdun {

struct Group {
  std::string label;
  std::vector<double> values;
};

// Responses partitioned by treatment level. Group 0 is the control by
// default; control_index points at it otherwise.
struct GroupedSample {
  std::vector<Group> groups;
  std::size_t control_index = 0;

  // Throws ArgumentError unless: at least 2 groups, every group nonempty,
  // all values finite, labels unique, control_index in range.
  void validate() const;

  std::size_t total_observations() const;
};

// Reads a comma-separated file (header row, UTF-8, unquoted numerics) and
// groups the response column by the group column. Groups are ordered by
// first appearance; if control_label is given that group is moved to the
// front. Throws SchemaError for missing columns, ParseError (with the
// offending line number) for non-numeric responses, ArgumentError for an
// unknown control label.
GroupedSample load_csv(const std::filesystem::path& path,
                       const std::string& response_col,
                       const std::string& group_col,
                       const std::optional<std::string>& control_label = {});

struct GroupSummary {
  std::string label;
  std::size_t n = 0;
  double median = 0.0;
  std::optional<double> variance;  // unbiased; absent for n = 1
};

std::vector<GroupSummary> summarize_groups(const GroupedSample& sample);

}  // namespace levdun
