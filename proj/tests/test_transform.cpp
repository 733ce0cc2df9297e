#include <doctest.h>

#include <cmath>
#include <random>

#include "levdun/errors.hpp"
#include "levdun/transform.hpp"
#include "testutil.hpp"

using namespace levdun;

TEST_CASE("group_median conventions") {
  CHECK(group_median(std::vector<double>{1, 2, 3}) == 2.0);
  CHECK(group_median(std::vector<double>{1, 2, 3, 4}) == 2.5);
  CHECK(group_median(std::vector<double>{7}) == 7.0);
  CHECK(group_median(std::vector<double>{3, 1}) == 2.0);
  CHECK_THROWS_AS(group_median(std::vector<double>{}), ArgumentError);
}

TEST_CASE("levene_transform takes absolute deviations from group medians") {
  const auto s = testutil::make_sample({{"a", {4, 1, 7}}, {"b", {5, 5, 5}}});
  const TransformedSample z = levene_transform(s);
  CHECK(z.groups[0].values == std::vector<double>{0, 3, 3});
  CHECK(z.groups[1].values == std::vector<double>{0, 0, 0});
  CHECK(z.trimmed_counts == std::vector<std::size_t>{0, 0});
  CHECK(z.original_sizes == std::vector<std::size_t>{3, 3});
}

TEST_CASE("levene_transform with even groups uses midpoint medians") {
  const auto s = testutil::make_sample({{"a", {1, 3}}, {"b", {10, 14}}});
  const TransformedSample z = levene_transform(s);
  CHECK(z.groups[0].values == std::vector<double>{1, 1});
  CHECK(z.groups[1].values == std::vector<double>{2, 2});
}

TEST_CASE("modified transform removes one zero from odd groups only") {
  const auto s = testutil::make_sample(
      {{"odd", {4, 1, 7}}, {"even", {1, 3}}, {"ties", {2, 2, 5}}});
  const TransformedSample z = modified_levene_transform(s);
  CHECK(z.groups[0].values == std::vector<double>{3, 3});
  CHECK(z.trimmed_counts[0] == 1);
  CHECK(z.groups[1].values == std::vector<double>{1, 1});
  CHECK(z.trimmed_counts[1] == 0);
  // Z = (0, 0, 3); exactly one zero goes.
  CHECK(z.groups[2].values == std::vector<double>{0, 3});
  CHECK(z.trimmed_counts[2] == 1);
  for (std::size_t j = 0; j < z.groups.size(); ++j) {
    CHECK(z.groups[j].values.size() == z.original_sizes[j] - z.trimmed_counts[j]);
  }
}

TEST_CASE("modified transform rejects a singleton odd group") {
  const auto s = testutil::make_sample({{"a", {4.0}}, {"b", {1, 2}}});
  CHECK_THROWS_AS(modified_levene_transform(s), DegenerateGroupError);
}

TEST_CASE("per-group location shifts never change the transform") {
  // Dyadic values and shifts keep the shifted arithmetic exact, so the
  // comparison can be bitwise.
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    GroupedSample a;
    GroupedSample b;
    const double shifts[] = {128.0, -64.5, 1024.25};
    for (int g = 0; g < 3; ++g) {
      Group ga{std::string(1, char('a' + g)), {}};
      Group gb = ga;
      const int n = 2 + int(rng() % 8);
      for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(int(rng() % 4096)) / 16.0;
        ga.values.push_back(v);
        gb.values.push_back(v + shifts[g]);
      }
      a.groups.push_back(ga);
      b.groups.push_back(gb);
    }
    const TransformedSample za = levene_transform(a);
    const TransformedSample zb = levene_transform(b);
    for (int g = 0; g < 3; ++g) {
      CHECK(za.groups[g].values == zb.groups[g].values);
    }
  }
}

TEST_CASE("positive scaling scales the transform") {
  std::mt19937_64 rng(9);
  GroupedSample a;
  for (int g = 0; g < 2; ++g) {
    Group ga{std::string(1, char('a' + g)), {}};
    for (int i = 0; i < 9; ++i) {
      ga.values.push_back(std::uniform_real_distribution<>(-5, 5)(rng));
    }
    a.groups.push_back(ga);
  }
  GroupedSample b = a;
  const double c = 3.7;
  for (auto& g : b.groups) {
    for (auto& v : g.values) v *= c;
  }
  const TransformedSample za = levene_transform(a);
  const TransformedSample zb = levene_transform(b);
  for (std::size_t g = 0; g < za.groups.size(); ++g) {
    for (std::size_t i = 0; i < za.groups[g].values.size(); ++i) {
      CHECK(zb.groups[g].values[i] ==
            doctest::Approx(c * za.groups[g].values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("odd groups always contain an exact zero; trimming removes one value") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + 2 * int(rng() % 6);  // odd sizes 3..13
    Group g{"g", {}};
    for (int i = 0; i < n; ++i) {
      g.values.push_back(std::uniform_real_distribution<>(0, 1)(rng));
    }
    GroupedSample s;
    s.groups = {g, {"other", {1, 2, 3, 4}}};

    const TransformedSample plain = levene_transform(s);
    const auto& z = plain.groups[0].values;
    CHECK(std::count(z.begin(), z.end(), 0.0) >= 1);

    const TransformedSample trimmed = modified_levene_transform(s);
    CHECK(trimmed.groups[0].values.size() == z.size() - 1);
    CHECK(trimmed.groups[1].values.size() == 4);
  }
}
