#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "waring/harness.hpp"
#include "waring/rng.hpp"

using namespace waring;
using namespace waring::harness;

namespace {

std::vector<u64> squares_up_to(u64 limit) {
  std::vector<u64> out;
  for (u64 t = 1; t * t <= limit; ++t) out.push_back(t * t);
  return out;
}

// Ordered s-tuples by plain recursion.
u64 enumerate_tuples(const std::vector<u64>& A, unsigned s, u64 n) {
  if (s == 0) return n == 0;
  u64 total = 0;
  for (u64 a : A) {
    if (a <= n) total += enumerate_tuples(A, s - 1, n - a);
  }
  return total;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST(DenseSubset, Examples) {
  EXPECT_EQ(random_dense_subset(2, 100, 1.0, 7, SubsetMode::bernoulli), squares_up_to(100));
  EXPECT_EQ(random_dense_subset(2, 100, 0.3, 7, SubsetMode::full), squares_up_to(100));
  const auto half = random_dense_subset(2, 100, 0.5, 7, SubsetMode::exact_count);
  EXPECT_EQ(half.size(), 5u);
  for (u64 x : half) {
    const u64 t = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(x))));
    EXPECT_EQ(t * t, x);
  }
  EXPECT_TRUE(std::is_sorted(half.begin(), half.end()));
  EXPECT_EQ(half, random_dense_subset(2, 100, 0.5, 7, SubsetMode::exact_count));
  EXPECT_EQ(random_dense_subset(3, 100000, 0.4, 9, SubsetMode::bernoulli),
            random_dense_subset(3, 100000, 0.4, 9, SubsetMode::bernoulli));
  EXPECT_THROW(random_dense_subset(2, 100, 0.0, 1, SubsetMode::bernoulli), PreconditionError);
  EXPECT_THROW(random_dense_subset(2, 100, 1.5, 1, SubsetMode::bernoulli), PreconditionError);
}

TEST(DenseSubset, BernoulliRateIsPlausible) {
  const auto A = random_dense_subset(2, 100'000'000, 0.3, 3, SubsetMode::bernoulli);
  // 10^4 squares; the binomial standard deviation is about 46.
  EXPECT_NEAR(static_cast<double>(A.size()), 3000.0, 250.0);
}

TEST(EmpiricalDensity, Examples) {
  EXPECT_DOUBLE_EQ(empirical_density(squares_up_to(10000), 2, 10000), 1.0);
  EXPECT_DOUBLE_EQ(empirical_density({}, 2, 10000), 0.0);
  std::vector<u64> even_t;
  for (u64 t = 2; t <= 100; t += 2) even_t.push_back(t * t);
  EXPECT_DOUBLE_EQ(empirical_density(even_t, 2, 10000), 0.5);
}

TEST(EmpiricalDensity, ExactCountWithinOnePower) {
  for (double d : {0.1, 0.33, 0.5, 0.77, 0.95}) {
    for (unsigned k : {2u, 3u, 4u}) {
      const u64 range = 1'000'000;
      const auto A = random_dense_subset(k, range, d, 11, SubsetMode::exact_count);
      const double total = static_cast<double>(random_dense_subset(k, range, 1, 1, SubsetMode::full).size());
      EXPECT_LE(std::abs(empirical_density(A, k, range) - d), 1.0 / total + 1e-12) << d << " " << k;
    }
  }
}

TEST(Representation, Examples) {
  const std::vector<u64> A{1, 4, 9, 16, 25};
  const auto one = representation_count(A, 1, 30);
  for (u64 n = 0; n <= 30; ++n) EXPECT_EQ(one.counts[n], std::count(A.begin(), A.end(), n)) << n;
  const auto two = representation_count(A, 2, 50);
  EXPECT_EQ(two.counts[25], 2u);
  EXPECT_EQ(two.counts[50], 1u);
  EXPECT_EQ(two.counts[2], 1u);
  EXPECT_EQ(two.counts[3], 0u);
  EXPECT_FALSE(two.overflow);
}

TEST(Representation, MatchesTupleEnumeration) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::set<u64> pick;
    const u64 size = 1 + rng.uniform_below(20);
    while (pick.size() < size) pick.insert(1 + rng.uniform_below(60));
    const std::vector<u64> A(pick.begin(), pick.end());
    for (unsigned s = 1; s <= 3; ++s) {
      const u64 n_max = 3 * 60;
      const auto r = representation_count(A, s, n_max);
      for (u64 n = 0; n <= n_max; ++n) {
        ASSERT_EQ(r.counts[n], enumerate_tuples(A, s, n)) << trial << " s=" << s << " n=" << n;
      }
    }
  }
}

TEST(Representation, FivePositiveSquares) {
  const u64 n_max = 100000;
  const auto r = representation_count(squares_up_to(n_max), 5, n_max);
  for (u64 n = 34; n <= n_max; ++n) ASSERT_GT(r.counts[n], 0u) << n;
  EXPECT_EQ(r.counts[33], 0u);
}

TEST(Representation, OverflowIsFlagged) {
  std::vector<u64> A;
  for (u64 a = 1; a <= 200; ++a) A.push_back(a);
  const auto r = representation_count(A, 12, 2400);
  EXPECT_TRUE(r.overflow);
  EXPECT_FALSE(representation_count(A, 2, 400).overflow);
}

TEST(Shnirelman, Examples) {
  std::vector<u64> all;
  for (u64 n = 1; n <= 100; ++n) all.push_back(n);
  EXPECT_DOUBLE_EQ(shnirelman_density(all, 100), 1.0);
  EXPECT_DOUBLE_EQ(shnirelman_density(std::vector<u64>(all.begin() + 1, all.end()), 100), 0.0);

  std::vector<u64> B{1};
  for (u64 n = 2; n <= 100; n += 2) B.push_back(n);
  double want = 1.0;
  u64 count = 0;
  for (u64 N = 1; N <= 100; ++N) {
    count += std::find(B.begin(), B.end(), N) != B.end();
    want = std::min(want, static_cast<double>(count) / N);
  }
  EXPECT_DOUBLE_EQ(shnirelman_density(B, 100), want);
  EXPECT_DOUBLE_EQ(want, 50.0 / 99);  // odd prefixes N = 2m + 1 give (m + 1) / (2m + 1)
  EXPECT_THROW(shnirelman_density(std::vector<u64>{101}, 100), PreconditionError);
}

TEST(Config, KeyValueRoundTrip) {
  ExperimentConfig c;
  c.k = 3;
  c.w = 4;
  c.N = 12345;
  c.s = 9;
  c.density = 0.8125;
  c.seed = 0xDEADBEEFCAFEULL;
  c.rho = 0.1;
  c.grid = 65536;
  c.subset_mode = SubsetMode::exact_count;
  c.output_format = OutputFormat::csv;
  c.n_min = 100;
  c.congruence_filter = false;
  EXPECT_EQ(ExperimentConfig::from_key_value(c.to_key_value()), c);
  EXPECT_EQ(ExperimentConfig::from_json(c.to_json()), c);
  EXPECT_EQ(ExperimentConfig::from_json(json::parse(c.to_json().dump())), c);
}

TEST(Config, ParsingAndValidation) {
  const auto c = ExperimentConfig::from_key_value("# comment\nk = 2\n\ndensity=0.5  # trailing\ns=7\n");
  EXPECT_EQ(c.k, 2u);
  EXPECT_EQ(c.s, 7u);
  EXPECT_DOUBLE_EQ(c.density, 0.5);
  EXPECT_THROW(ExperimentConfig::from_key_value("bogus=1\n"), PreconditionError);
  EXPECT_THROW(ExperimentConfig::from_key_value("k=two\n"), PreconditionError);
  ExperimentConfig bad;
  bad.density = 0;
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = {};
  bad.grid = 1000;
  EXPECT_THROW(bad.validate(), PreconditionError);
  EXPECT_THROW(load_config("/nonexistent/waring.cfg"), Error);
}

TEST(Report, EmptyReportIsValidJson) {
  ExperimentReport r;
  const json j = json::parse(dump_json(to_json(r)));
  EXPECT_TRUE(j.contains("checks"));
  EXPECT_TRUE(j["checks"].is_array());
  EXPECT_TRUE(j["all_hold"].get<bool>());
  EXPECT_EQ(to_csv(r), "name,holds,flag_only,measured\r\n");
}

TEST(Report, JsonRoundTripAndCsvRows) {
  ExperimentReport r;
  r.config = ExperimentConfig{}.to_json();
  r.version = library_version();
  r.notes = {"a note, with a comma"};
  r.checks.push_back({"first", true, false, {{"x", 0.1}, {"label", "say \"hi\""}}});
  r.checks.push_back({"second", false, true, {{"y", 1e-300}}});
  r.wall_time_seconds = 1.25;
  const auto back = report_from_json(json::parse(dump_json(to_json(r))));
  EXPECT_EQ(to_json(back), to_json(r));
  EXPECT_EQ(back.checks[0].measured["x"].get<double>(), 0.1);
  EXPECT_EQ(count_lines(to_csv(r)), 1 + r.checks.size());
  EXPECT_NE(to_csv(r).find("\"{\"\"label\"\":\"\"say \\\"\"hi\\\"\"\"\""), std::string::npos);
  EXPECT_TRUE(r.all_hold());  // the failing check is flag-only
  r.checks.push_back({"third", false, false, {}});
  EXPECT_FALSE(r.all_hold());
}

TEST(Report, EmitToFile) {
  ExperimentReport r;
  r.checks.push_back({"c", true, false, {}});
  const auto path = std::filesystem::temp_directory_path() / "waring_report_test.json";
  emit_report(r, OutputFormat::json, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), dump_json(to_json(r)));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(r, OutputFormat::csv, "/nonexistent/dir/out.csv"), Error);
}

TEST(Report, JsonToCsv) {
  const json rows = json::parse(R"([{"a":1,"b":"x,y"},{"a":2,"c":[1,2]}])");
  EXPECT_EQ(json_to_csv(rows), "a,b,c\r\n1,\"x,y\",\r\n2,,\"[1,2]\"\r\n");
}

TEST(Coverage, FiveSquaresSanityMode) {
  ExperimentConfig c;
  c.k = 2;
  c.s = 5;
  c.N = 100000;
  c.n_min = 34;
  c.density = 1;
  c.congruence_filter = false;
  const auto r = coverage_experiment(c);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_TRUE(r.all_hold());
  EXPECT_DOUBLE_EQ(r.checks[0].measured["coverage"].get<double>(), 1.0);
  EXPECT_TRUE(r.checks[0].measured["first_gap"].is_null());
  EXPECT_TRUE(r.checks[1].holds);
  EXPECT_FALSE(r.notes.empty());  // s = 5 is far below the sufficient s

  c.n_min = 1;
  const auto gaps = coverage_experiment(c);
  EXPECT_EQ(gaps.checks[0].measured["first_gap"].get<u64>(), 1u);
  EXPECT_EQ(gaps.checks[0].measured["last_gap"].get<u64>(), 33u);
}

TEST(Coverage, DeterministicOutput) {
  ExperimentConfig c;
  c.N = 20000;
  c.s = 6;
  c.density = 0.7;
  c.subset_mode = SubsetMode::bernoulli;
  c.seed = 99;
  EXPECT_EQ(dump_json(to_json(coverage_experiment(c))), dump_json(to_json(coverage_experiment(c))));
  c.seed = 100;
  const auto other = coverage_experiment(c);
  EXPECT_EQ(other.config["seed"].get<u64>(), 100u);
}

TEST(Coverage, LowDensityIsNoted) {
  ExperimentConfig c;
  c.N = 5000;
  c.s = 44;
  c.density = 0.5;
  c.subset_mode = SubsetMode::exact_count;
  const auto r = coverage_experiment(c);
  bool density_note = false;
  for (const auto& n : r.notes) density_note = density_note || n.find("density") != std::string::npos;
  EXPECT_TRUE(density_note);
  c.density = 0.95;
  for (const auto& n : coverage_experiment(c).notes) EXPECT_EQ(n.find("density"), std::string::npos) << n;
}
