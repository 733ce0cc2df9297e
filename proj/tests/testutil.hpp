#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "levdun/dataset.hpp"

namespace testutil {

inline std::filesystem::path data_path(const std::string& name) {
  if (const char* dir = std::getenv("LEVDUN_DATA_DIR")) {
    return std::filesystem::path(dir) / name;
  }
  return std::filesystem::path("data") / name;
}

inline bool have_dataset(const std::string& name) {
  return std::filesystem::exists(data_path(name));
}

// Writes content to a fresh file under the system temp directory.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& stem = "levdun_test") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            (stem + "_" + std::to_string(++counter) + "_" +
             std::to_string(std::random_device{}()) + ".csv");
    std::ofstream f(path_, std::ios::binary);
    f << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline levdun::GroupedSample make_sample(
    std::initializer_list<std::pair<std::string, std::vector<double>>> groups) {
  levdun::GroupedSample s;
  for (const auto& [label, values] : groups) {
    s.groups.push_back({label, values});
  }
  return s;
}

}  // namespace testutil
