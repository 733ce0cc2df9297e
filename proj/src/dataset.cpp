#include "levdun/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "levdun/errors.hpp"
#include "levdun/transform.hpp"

namespace levdun {

void GroupedSample::validate() const {
  if (groups.size() < 2) {
    throw ArgumentError("need at least 2 groups, got " + std::to_string(groups.size()));
  }
  if (control_index >= groups.size()) {
    throw ArgumentError("control_index out of range");
  }
  std::unordered_set<std::string> seen;
  for (const auto& g : groups) {
    if (g.values.empty()) {
      throw ArgumentError("group '" + g.label + "' is empty");
    }
    for (double v : g.values) {
      if (!std::isfinite(v)) {
        throw ArgumentError("group '" + g.label + "' contains a non-finite value");
      }
    }
    if (!seen.insert(g.label).second) {
      throw ArgumentError("duplicate group label '" + g.label + "'");
    }
  }
}

std::size_t GroupedSample::total_observations() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.values.size();
  return n;
}

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(strip(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(strip(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double parse_response(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": response value '" +
                     token + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": response value '" +
                     token + "' is not finite");
  }
  return value;
}

}  // namespace

GroupedSample load_csv(const std::filesystem::path& path,
                       const std::string& response_col,
                       const std::string& group_col,
                       const std::optional<std::string>& control_label) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open file: " + path.string());
  }

  std::string header;
  if (!std::getline(in, header)) {
    throw SchemaError(path.string() + ": empty file");
  }
  // Tolerate a UTF-8 byte-order mark.
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    header.erase(0, 3);
  }

  const auto columns = split_csv_line(header);
  auto find_col = [&](const std::string& name) {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
      throw SchemaError(path.string() + ": missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
  };
  const std::size_t response_idx = find_col(response_col);
  const std::size_t group_idx = find_col(group_col);

  GroupedSample sample;
  std::unordered_map<std::string, std::size_t> group_of;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != columns.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const double value = parse_response(fields[response_idx], line_no);
    const std::string& label = fields[group_idx];
    auto [it, inserted] = group_of.try_emplace(label, sample.groups.size());
    if (inserted) {
      sample.groups.push_back(Group{label, {}});
    }
    sample.groups[it->second].values.push_back(value);
  }

  if (control_label) {
    auto it = group_of.find(*control_label);
    if (it == group_of.end()) {
      throw ArgumentError("unknown control label '" + *control_label + "'");
    }
    std::rotate(sample.groups.begin(), sample.groups.begin() + it->second,
                sample.groups.begin() + it->second + 1);
  }
  sample.control_index = 0;
  sample.validate();
  return sample;
}

std::vector<GroupSummary> summarize_groups(const GroupedSample& sample) {
  sample.validate();
  std::vector<GroupSummary> out;
  out.reserve(sample.groups.size());
  for (const auto& g : sample.groups) {
    GroupSummary row;
    row.label = g.label;
    row.n = g.values.size();
    row.median = group_median(g.values);
    if (row.n > 1) {
      double mean = 0.0;
      for (double v : g.values) mean += v;
      mean /= static_cast<double>(row.n);
      double ss = 0.0;
      for (double v : g.values) ss += (v - mean) * (v - mean);
      row.variance = ss / static_cast<double>(row.n - 1);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace levdun
