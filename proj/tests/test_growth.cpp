#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cogrowth/errors.hpp"
#include "cogrowth/growth.hpp"
#include "oracles.hpp"

using namespace cogrowth;

namespace {

// b_t straight from the brute-force census: sum over r of census(r) * a_r / |S_r|.
BigCount brute_b(const Profile& p, const TreeSpec& tree, int t) {
  BigCount total = 0;
  for (const auto& [r, count] : brute_force_walk_census(tree, t)) {
    total += count * p.exact_values()[static_cast<std::size_t>(r)] / sphere_size(tree, r);
  }
  return total;
}

Profile random_subset_profile(const TreeSpec& tree, int r_max, std::mt19937_64& rng) {
  std::vector<BigCount> values;
  for (int r = 0; r <= r_max; ++r) {
    const BigCount sphere = sphere_size(tree, r);
    gmp_randclass draw(gmp_randinit_default);
    draw.seed(static_cast<unsigned long>(rng()));
    values.push_back(draw.get_z_range(sphere + 1));
  }
  return Profile::exact(std::move(values), "random subset");
}

}  // namespace

TEST(BSequence, FullTreeIsEveryWalk) {
  const auto b = b_sequence(profile_full_tree(3, 200), RegularTree(3), 200, NumericMode::exact);
  for (int t = 0; t <= 200; ++t) {
    ASSERT_EQ(b.exact[static_cast<std::size_t>(t)], oracle::power(3, t));
  }
}

TEST(BSequence, ListedValues) {
  const auto delta = b_sequence(profile_single_vertex(0, 3, 4), RegularTree(3), 4, NumericMode::exact);
  EXPECT_EQ(delta.exact[2], 3);
  EXPECT_EQ(delta.exact[4], 15);
  std::vector<BigCount> sphere_one(5);
  sphere_one[1] = 3;
  const auto b = b_sequence(Profile::exact(sphere_one, "sphere 1"), RegularTree(3), 4,
                            NumericMode::exact);
  EXPECT_EQ(b.exact[1], 3);
  EXPECT_EQ(b.exact[3], 15);
}

TEST(BSequence, MatchesBruteForceOnRandomSubsets) {
  std::mt19937_64 rng(11);
  for (const TreeSpec& tree : {TreeSpec(RegularTree(3)), TreeSpec(RegularTree(4)),
                               TreeSpec(BiregularTree(2, 3, RootDegree::c)),
                               TreeSpec(BiregularTree(2, 3, RootDegree::d))}) {
    const auto p = random_subset_profile(tree, 10, rng);
    const auto b = b_sequence(p, tree, 10, NumericMode::exact);
    for (int t = 0; t <= 10; ++t) {
      ASSERT_EQ(b.exact[static_cast<std::size_t>(t)], brute_b(p, tree, t)) << describe(tree);
    }
  }
}

TEST(BSequence, BiregularFullTree) {
  const TreeSpec tree = BiregularTree(2, 3, RootDegree::c);
  const auto b = b_sequence(profile_full_tree(tree, 100), tree, 100, NumericMode::exact);
  for (int t = 0; t <= 50; ++t) {
    ASSERT_EQ(b.exact[static_cast<std::size_t>(2 * t)], oracle::power(6, t));
  }
}

TEST(BSequence, LogModeAgreesWithExact) {
  const auto p = profile_squares(2, 16);
  const auto exact = b_sequence(p, RegularTree(4), 16, NumericMode::exact);
  const auto logged = b_sequence(p, RegularTree(4), 16, NumericMode::log);
  for (int t = 0; t <= 16; ++t) {
    EXPECT_LT(relative_difference(exact.log[static_cast<std::size_t>(t)],
                                  logged.log[static_cast<std::size_t>(t)]),
              1e-12);
  }
}

TEST(BSequence, BoundedByAllWalks) {
  std::mt19937_64 rng(5);
  const TreeSpec tree = RegularTree(3);
  const auto full = b_sequence(profile_full_tree(3, 100), tree, 100, NumericMode::exact);
  for (int trial = 0; trial < 4; ++trial) {
    auto p = random_subset_profile(tree, 100, rng);
    const auto b = b_sequence(p, tree, 100, NumericMode::exact);
    bool all_equal = true;
    for (int t = 0; t <= 100; ++t) {
      const auto i = static_cast<std::size_t>(t);
      ASSERT_LE(b.exact[i], full.exact[i]);
      all_equal = all_equal && b.exact[i] == full.exact[i];
    }
    // a random draw misses some vertex at some radius
    EXPECT_FALSE(all_equal);
  }
}

TEST(BSequence, Linearity) {
  std::mt19937_64 rng(7);
  const TreeSpec tree = BiregularTree(3, 4);
  const auto p = random_subset_profile(tree, 40, rng);
  const auto q = random_subset_profile(tree, 40, rng);
  const auto sum = b_sequence(p + q, tree, 40, NumericMode::exact);
  const auto bp = b_sequence(p, tree, 40, NumericMode::exact);
  const auto bq = b_sequence(q, tree, 40, NumericMode::exact);
  for (std::size_t t = 0; t <= 40; ++t) {
    ASSERT_EQ(sum.exact[t], bp.exact[t] + bq.exact[t]);
  }
}

TEST(BSequence, ParitySeparation) {
  const auto even = b_sequence(profile_geometric(2.0, Parity::even, 5, 60, true), RegularTree(5),
                               60, NumericMode::exact);
  const auto odd = b_sequence(profile_geometric(2.0, Parity::odd, 5, 60, true), RegularTree(5), 60,
                              NumericMode::exact);
  for (std::size_t t = 0; t <= 60; ++t) {
    EXPECT_EQ(even.exact[t] == 0, t % 2 == 1);
    EXPECT_EQ(odd.exact[t] == 0, t % 2 == 0);
  }
}

TEST(BSequence, MonotoneDomination) {
  std::mt19937_64 rng(3);
  const TreeSpec tree = RegularTree(4);
  const auto big = random_subset_profile(tree, 50, rng);
  std::vector<BigCount> smaller = big.exact_values();
  for (auto& v : smaller) {
    v /= 2;
  }
  const auto b_big = b_sequence(big, tree, 50, NumericMode::exact);
  const auto b_small = b_sequence(Profile::exact(smaller, "half"), tree, 50, NumericMode::exact);
  for (std::size_t t = 0; t <= 50; ++t) {
    ASSERT_LE(b_small.exact[t], b_big.exact[t]);
  }
}

TEST(BSequence, RefusesShortProfilesAndMismatchedModes) {
  EXPECT_THROW(b_sequence(profile_squares(2, 8), RegularTree(4), 10, NumericMode::exact),
               InvalidInput);
  const auto real = profile_geometric(1.5, Parity::both, 4, 10, false);
  EXPECT_THROW(b_sequence(real, RegularTree(4), 10, NumericMode::exact), InvalidInput);
  EXPECT_THROW(b_sequence(profile_full_tree(3, 30), RegularTree(3), 30, NumericMode::exact, 20),
               InvalidInput);
}

TEST(Estimators, FullTreeAlpha) {
  const auto root = alpha_estimate(profile_full_tree(3, 1000), 0.5, EstimatorMethod::root);
  // (3 * 2^{t-1})^{1/t} approaches 2 from above as 1.5^{1/t}
  EXPECT_NEAR(*root.overall, 2.0 * std::pow(1.5, 1.0 / 500), 1e-12);
  EXPECT_GT(*root.overall, 2.0);
  const auto ratio = alpha_estimate(profile_full_tree(3, 1000), 0.5, EstimatorMethod::ratio);
  EXPECT_NEAR(*ratio.overall, 2.0, 1e-9);
}

TEST(Estimators, GeometricAlpha) {
  const auto est = alpha_estimate(profile_geometric(2.0, Parity::both, 6, 400, false), 0.5,
                                  EstimatorMethod::root);
  EXPECT_NEAR(*est.overall, 2.0, 1e-6);
}

TEST(Estimators, SquaresAlphaBand) {
  const auto est = alpha_estimate(profile_squares(2, 16), 0.5, EstimatorMethod::root);
  ASSERT_TRUE(est.even.has_value());
  EXPECT_GE(*est.even, 1.73);
  EXPECT_LE(*est.even, 2.10);
  EXPECT_FALSE(est.odd.has_value());
}

TEST(Estimators, FiniteSupportReportsZero) {
  const auto est = alpha_estimate(profile_single_vertex(0, 3, 100), 0.5, EstimatorMethod::root);
  EXPECT_EQ(est.even, 0.0);
  EXPECT_FALSE(est.odd.has_value());
  EXPECT_EQ(est.overall, 0.0);
}

TEST(Estimators, BetaOfPowers) {
  std::vector<LogValue> seq;
  for (int t = 0; t <= 300; ++t) {
    seq.push_back(LogValue::from_log(t * std::log(3.0)));
  }
  EXPECT_NEAR(*beta_estimate(seq, 0.5, EstimatorMethod::root).overall, 3.0, 1e-12);
  EXPECT_NEAR(*beta_estimate(seq, 0.5, EstimatorMethod::ratio).overall, 3.0, 1e-12);
  EXPECT_THROW(beta_estimate(std::vector<LogValue>(4), 0.5, EstimatorMethod::root), InvalidInput);
  EXPECT_THROW(beta_estimate(seq, 1.5, EstimatorMethod::root), InvalidInput);
}

TEST(Verify, FullTree) {
  const auto report = verify(profile_full_tree(3, 400), RegularTree(3), 400);
  EXPECT_EQ(report.mode, NumericMode::exact);
  EXPECT_LT(report.max_relative_gap, 1e-6);
  EXPECT_NEAR(*report.ratio.predicted_beta.overall, 3.0, 1e-9);
  EXPECT_NEAR(*report.ratio.beta.overall, 3.0, 1e-9);
}

TEST(Verify, FullBiregularTree) {
  const TreeSpec tree = BiregularTree(2, 3);
  const auto report = verify(profile_full_tree(tree, 400), tree, 400);
  EXPECT_NEAR(*report.ratio.predicted_beta.even, std::sqrt(6.0), 1e-9);
  EXPECT_LT(*report.ratio.relative_gap.even, 1e-6);
}

TEST(Verify, SubcriticalGeometric) {
  const auto report =
      verify(profile_geometric(1.0, Parity::both, 6, 4000, false), RegularTree(6), 4000);
  EXPECT_EQ(report.mode, NumericMode::log);
  EXPECT_NEAR(*report.root.predicted_beta.overall, 2 * std::sqrt(5.0), 1e-12);
  EXPECT_LT(report.root.max_relative_gap, 0.01);
  ASSERT_TRUE(report.cross_check_max_rel_err.has_value());
  EXPECT_LT(*report.cross_check_max_rel_err, 1e-10);
}

TEST(Verify, GapShrinksWithLength) {
  double previous = 1.0;
  for (int t_max : {1000, 2000, 4000}) {
    const auto report =
        verify(profile_geometric(3.0, Parity::both, 6, t_max, false), RegularTree(6), t_max);
    EXPECT_LT(report.root.max_relative_gap, previous) << t_max;
    previous = report.root.max_relative_gap;
  }
}

TEST(Verify, ModesAndCrossCheck) {
  const auto p = profile_full_tree(3, 120);
  VerifyOptions forced;
  forced.mode = ModeChoice::log;
  const auto logged = verify(p, RegularTree(3), 120, forced);
  EXPECT_EQ(logged.mode, NumericMode::log);
  EXPECT_FALSE(logged.cross_check_max_rel_err.has_value());
  VerifyOptions low_ceiling;
  low_ceiling.exact_ceiling = 100;
  const auto automatic = verify(p, RegularTree(3), 120, low_ceiling);
  EXPECT_EQ(automatic.mode, NumericMode::log);
  EXPECT_LT(*automatic.cross_check_max_rel_err, 1e-12);
}

TEST(Verify, ConjectureProbeIsFlagged) {
  const BiregularTree tree(2, 3);
  const auto p = profile_geometric(std::sqrt(2.0), Parity::both, tree, 2000, true);
  const auto report = conjecture_probe_biregular(p, tree, 2000);
  EXPECT_TRUE(report.experimental);
  EXPECT_NE(report.note.find("conjecture"), std::string::npos);
  EXPECT_NEAR(*report.ratio.predicted_beta.overall, std::sqrt(6.0), 1e-9);
  EXPECT_LT(report.max_relative_gap, 1e-6);
}

TEST(Reports, JsonTableCsv) {
  const auto report = verify(profile_squares(2, 16), RegularTree(4), 16);
  const auto doc = nlohmann::json::parse(report_to_json(report));
  for (const char* key : {"alpha", "predicted_beta", "beta", "gap", "parity"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_TRUE(doc["parity"]["odd"]["alpha"].is_null());
  EXPECT_NEAR(doc["parity"]["even"]["predicted_beta"].get<double>(), 2 * std::sqrt(3.0), 0.01 * 2 * std::sqrt(3.0));
  EXPECT_NE(report_to_table(report).find("absent"), std::string::npos);
  std::ostringstream csv;
  write_b_trace_csv(report, csv);
  EXPECT_EQ(csv.str().rfind("t,log_b\n0,0\n1,-inf\n", 0), 0U);
}
