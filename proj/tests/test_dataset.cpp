#include <doctest.h>

#include <algorithm>
#include <random>

#include "levdun/dataset.hpp"
#include "levdun/errors.hpp"
#include "testutil.hpp"

using namespace levdun;
using testutil::TempFile;

TEST_CASE("load_csv groups rows by first appearance") {
  TempFile f("x,resp,grp\n1,1.5,A\n2,2.5,B\n");
  const GroupedSample s = load_csv(f.path(), "resp", "grp");
  REQUIRE(s.groups.size() == 2);
  CHECK(s.groups[0].label == "A");
  CHECK(s.groups[0].values == std::vector<double>{1.5});
  CHECK(s.groups[1].label == "B");
  CHECK(s.groups[1].values == std::vector<double>{2.5});
  CHECK(s.control_index == 0);
}

TEST_CASE("load_csv moves the requested control to the front") {
  TempFile f("resp,grp\n1,A\n2,B\n3,C\n4,B\n");
  const GroupedSample s = load_csv(f.path(), "resp", "grp", "B");
  REQUIRE(s.groups.size() == 3);
  CHECK(s.groups[0].label == "B");
  CHECK(s.groups[0].values == std::vector<double>{2.0, 4.0});
  CHECK(s.groups[1].label == "A");
  CHECK(s.groups[2].label == "C");
}

TEST_CASE("load_csv error contracts") {
  TempFile na("resp,grp\n1.0,A\nNA,A\n2.0,B\n");
  CHECK_THROWS_WITH_AS(load_csv(na.path(), "resp", "grp"),
                       doctest::Contains("line 3"), ParseError);

  TempFile ok("resp,grp\n1.0,A\n2.0,B\n");
  CHECK_THROWS_AS(load_csv(ok.path(), "weight", "grp"), SchemaError);
  CHECK_THROWS_AS(load_csv(ok.path(), "resp", "grp", "999"), ArgumentError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "resp", "grp"), ArgumentError);

  TempFile ragged("resp,grp\n1.0,A,extra\n");
  CHECK_THROWS_AS(load_csv(ragged.path(), "resp", "grp"), ParseError);
}

TEST_CASE("summarize_groups basics") {
  const auto s = testutil::make_sample({{"A", {1, 2, 3}}, {"B", {5}}});
  const auto rows = summarize_groups(s);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "A");
  CHECK(rows[0].n == 3);
  CHECK(rows[0].median == doctest::Approx(2.0));
  REQUIRE(rows[0].variance.has_value());
  CHECK(*rows[0].variance == doctest::Approx(1.0));
  CHECK(rows[1].n == 1);
  CHECK(rows[1].median == doctest::Approx(5.0));
  CHECK_FALSE(rows[1].variance.has_value());
}

TEST_CASE("summaries are invariant to within-group permutation") {
  std::mt19937_64 rng(42);
  std::vector<double> values;
  for (int i = 0; i < 25; ++i) values.push_back(std::uniform_real_distribution<>(-3, 9)(rng));

  auto s = testutil::make_sample({{"A", values}, {"B", {1, 2}}});
  const auto before = summarize_groups(s);
  std::shuffle(s.groups[0].values.begin(), s.groups[0].values.end(), rng);
  const auto after = summarize_groups(s);
  CHECK(before[0].median == after[0].median);
  CHECK(*before[0].variance == doctest::Approx(*after[0].variance).epsilon(1e-12));
}

TEST_CASE("GroupedSample validation") {
  auto one_group = testutil::make_sample({{"A", {1, 2}}});
  CHECK_THROWS_AS(one_group.validate(), ArgumentError);

  auto dup = testutil::make_sample({{"A", {1}}, {"A", {2}}});
  CHECK_THROWS_AS(dup.validate(), ArgumentError);

  auto empty_group = testutil::make_sample({{"A", {1}}, {"B", {}}});
  CHECK_THROWS_AS(empty_group.validate(), ArgumentError);

  auto bad_control = testutil::make_sample({{"A", {1}}, {"B", {2}}});
  bad_control.control_index = 5;
  CHECK_THROWS_AS(bad_control.validate(), ArgumentError);
}

TEST_CASE("bundled survival data loads with the documented shape") {
  if (!testutil::have_dataset("survival.csv")) {
    MESSAGE("survival.csv not present; skipping");
    return;
  }
  const GroupedSample s = load_csv(testutil::data_path("survival.csv"),
                                   "survival", "site");
  REQUIRE(s.groups.size() == 5);
  const auto rows = summarize_groups(s);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.n;
  CHECK(total == s.total_observations());
  CHECK(total == 64);  // data rows in the bundled file
}

TEST_CASE("bundled litter data loads with control first when present") {
  if (!testutil::have_dataset("litter.csv")) {
    MESSAGE("litter.csv not present; skipping (see README on obtaining it)");
    return;
  }
  const GroupedSample s = load_csv(testutil::data_path("litter.csv"),
                                   "weight", "dose", "0");
  REQUIRE(s.groups.size() == 4);
  CHECK(s.groups[0].label == "0");
  std::size_t total = 0;
  for (const auto& g : s.groups) total += g.values.size();
  CHECK(total == 74);
}
