#include <cmath>

#include <gtest/gtest.h>

#include "cogrowth/combinatorics.hpp"
#include "cogrowth/errors.hpp"
#include "oracles.hpp"

using namespace cogrowth;

TEST(Binomial, SmallValuesAndBounds) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(10, 0), 1);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, MatchesPascalTriangle) {
  EXPECT_EQ(binomial(30, 15), oracle::pascal(30, 15));
  EXPECT_EQ(binomial(30, 15), 155117520);
  for (int n = 0; n <= 40; ++n) {
    for (int k = -1; k <= n + 1; ++k) {
      ASSERT_EQ(binomial(n, k), oracle::pascal(n, k)) << n << " choose " << k;
    }
  }
}

TEST(Binomial, RejectsNegativeN) { EXPECT_THROW(binomial(-1, 0), InvalidInput); }

TEST(Multinomial, MatchesFactorials) {
  EXPECT_EQ(multinomial3(3, 1, 1, 1), 6);
  EXPECT_EQ(multinomial3(5, 5, 0, 0), 1);
  EXPECT_EQ(multinomial3(6, 1, 2, 3), 60);
  for (int x = 0; x <= 6; ++x) {
    for (int y = 0; y <= 6; ++y) {
      for (int z = 0; z <= 6; ++z) {
        const int n = x + y + z;
        const mpz_class expected =
            oracle::factorial(n) / (oracle::factorial(x) * oracle::factorial(y) * oracle::factorial(z));
        ASSERT_EQ(multinomial3(n, x, y, z), expected);
      }
    }
  }
}

TEST(Multinomial, RejectsBadSplit) {
  EXPECT_THROW(multinomial3(4, 1, 1, 1), InvalidInput);
  EXPECT_THROW(multinomial3(1, 2, -1, 0), InvalidInput);
}

TEST(Catalan, FirstTerms) {
  const int expected[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 0; n < 8; ++n) {
    EXPECT_EQ(catalan(n), expected[n]);
  }
}

TEST(BallotRegular, ListedValues) {
  EXPECT_EQ(positive_walks_regular(2, 2, 3), 4);
  EXPECT_EQ(positive_walks_regular(4, 3, 3), 16);
  EXPECT_EQ(positive_walks_regular(4, 2, 5), 0);
  EXPECT_EQ(nonnegative_walks_regular(4, 2, 3), 8);
  EXPECT_EQ(nonnegative_walks_regular(0, 0, 3), 1);
  EXPECT_EQ(nonnegative_walks_regular(3, 3, 4), 27);
}

TEST(BallotRegular, RejectsOutOfRange) {
  EXPECT_THROW(positive_walks_regular(4, 1, 3), InvalidInput);
  EXPECT_THROW(positive_walks_regular(4, 5, 3), InvalidInput);
  EXPECT_THROW(positive_walks_regular(0, 0, 3), InvalidInput);
  EXPECT_THROW(nonnegative_walks_regular(5, 2, 3), InvalidInput);
  EXPECT_THROW(nonnegative_walks_regular(4, 2, 2), InvalidInput);
}

TEST(BallotRegular, MatchesSequenceEnumeration) {
  for (int d = 3; d <= 5; ++d) {
    for (int t = 0; t <= 12; ++t) {
      for (int y = (t + 1) / 2; y <= t; ++y) {
        if (t >= 1) {
          ASSERT_EQ(positive_walks_regular(t, y, d), oracle::ballot_sequences(t, y, d, true))
              << "t=" << t << " y=" << y << " d=" << d;
        }
        ASSERT_EQ(nonnegative_walks_regular(t, y, d), oracle::ballot_sequences(t, y, d, false))
            << "t=" << t << " y=" << y << " d=" << d;
      }
    }
  }
}

TEST(BallotRegular, ReflectionIdentities) {
  for (int d = 3; d <= 6; ++d) {
    for (int t = 1; t <= 30; ++t) {
      for (int y = (t + 1) / 2; y <= t; ++y) {
        const mpz_class weight = oracle::power(d - 1, y);
        EXPECT_EQ(positive_walks_regular(t, y, d),
                  (oracle::pascal(t - 1, y - 1) - oracle::pascal(t - 1, y)) * weight);
        EXPECT_EQ(nonnegative_walks_regular(t, y, d),
                  (oracle::pascal(t, y) - oracle::pascal(t, y + 1)) * weight);
      }
    }
  }
}

TEST(BallotRegular, DyckPathsAreCatalan) {
  for (int d = 3; d <= 5; ++d) {
    for (int y = 0; y <= 15; ++y) {
      EXPECT_EQ(nonnegative_walks_regular(2 * y, y, d), catalan(y) * oracle::power(d - 1, y));
    }
  }
}

TEST(BallotBiregular, ListedValues) {
  EXPECT_EQ(positive_walks_biregular(0, 0, 1, 2, 3), 2);
  // (1/2) * 2 * 3 * 2: one admissible order (up, level) out of two
  EXPECT_EQ(positive_walks_biregular(0, 1, 1, 2, 3), 6);
  EXPECT_EQ(oracle::double_step_sequences(0, 1, 1, 2, 3, true), 6);
  EXPECT_EQ(positive_walks_biregular(1, 0, 2, 3, 3), 16);
}

TEST(BallotBiregular, RejectsNonPositiveDrift) {
  EXPECT_THROW(positive_walks_biregular(1, 0, 1, 2, 3), InvalidInput);
  EXPECT_THROW(positive_walks_biregular(2, 3, 1, 2, 3), InvalidInput);
}

TEST(BallotBiregular, MatchesDoubleStepEnumeration) {
  for (const auto& [c, d] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 5}, std::pair{3, 4}}) {
    for (int n = 1; n <= 8; ++n) {
      for (int x = 0; x <= n; ++x) {
        for (int z = x + 1; x + z <= n; ++z) {
          const int y = n - x - z;
          ASSERT_EQ(positive_walks_biregular(x, y, z, c, d),
                    oracle::double_step_sequences(x, y, z, c, d, true))
              << x << ' ' << y << ' ' << z << " c=" << c << " d=" << d;
        }
      }
    }
  }
}

TEST(BallotBiregular, AllOrdersSumToMultinomialWeight) {
  const int c = 2;
  const int d = 3;
  for (int n = 0; n <= 8; ++n) {
    for (int x = 0; x <= n; ++x) {
      for (int z = 0; x + z <= n; ++z) {
        const int y = n - x - z;
        const mpz_class total = multinomial3(n, x, y, z) * oracle::power(c + d - 2, y) *
                                oracle::power((c - 1) * (d - 1), z);
        EXPECT_EQ(all_walks_biregular(x, y, z, c, d), total);
        EXPECT_EQ(total, oracle::double_step_sequences(x, y, z, c, d, false));
        if (z > x) {
          EXPECT_EQ(positive_walks_biregular(x, y, z, c, d) +
                        oracle::double_step_touching_zero(x, y, z, c, d),
                    total);
        }
      }
    }
  }
}

TEST(Q2, ListedValues) {
  EXPECT_EQ(q2_proportion(4, 3), mpq_class(1, 3));
  EXPECT_EQ(q2_proportion(10, 8), mpq_class(8, 35));
  EXPECT_EQ(q2_proportion(6, 6), 0);
  EXPECT_THROW(q2_proportion(4, 2), InvalidInput);
}

TEST(Q2, MatchesEnumeration) {
  for (int t = 1; t <= 12; ++t) {
    for (int y = t / 2 + 1; y <= t; ++y) {
      ASSERT_EQ(q2_proportion(t, y), oracle::not_positive_share(t, y)) << t << ' ' << y;
    }
  }
}

TEST(Q2, BelowFiveEighthsOnceDriftIsThree) {
  const mpq_class bound(5, 8);
  for (int t = 1; t <= 200; ++t) {
    for (int y = t / 2 + 1; y <= t; ++y) {
      if (2 * y - t >= 3) {
        ASSERT_LT(q2_proportion(t, y), bound) << t << ' ' << y;
      }
    }
  }
}

TEST(GRegular, ListedValues) {
  EXPECT_NEAR(g_regular(4, std::sqrt(3.0)), 2 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(g_regular(6, 3.0), 3.0 + 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(g_regular(3, 2.0), 3.0, 1e-12);
  EXPECT_NEAR(g_regular(6, 1.0), 2 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(g_regular(6, 2.0), 2 * std::sqrt(5.0), 1e-12);
}

TEST(GRegular, ShapeAndContinuity) {
  for (int d = 3; d <= 8; ++d) {
    const double floor = 2 * std::sqrt(d - 1.0);
    const double knee = std::sqrt(d - 1.0);
    EXPECT_NEAR(g_regular(d, knee * (1 - 1e-9)), g_regular(d, knee * (1 + 1e-9)), 1e-8);
    double previous = floor;
    for (double a = 0.0; a <= 3 * d; a += 0.01) {
      const double g = g_regular(d, a);
      EXPECT_GE(g, floor - 1e-12);
      if (a >= knee) {
        EXPECT_GE(g, previous - 1e-12);
      }
      previous = g;
    }
  }
  EXPECT_THROW(g_regular(3, -0.1), InvalidInput);
  EXPECT_THROW(g_regular(3, std::nan("")), InvalidInput);
  EXPECT_THROW(g_regular(2, 1.0), InvalidInput);
}

TEST(GRegular, ExactMode) {
  for (int d = 3; d <= 10; ++d) {
    EXPECT_EQ(g_regular_exact(d, mpq_class(d - 1)), mpq_class(d));
  }
  EXPECT_EQ(g_regular_exact(6, mpq_class(3)), mpq_class(14, 3));
  EXPECT_EQ(g_regular_exact(10, mpq_class(1)), mpq_class(6));  // 2 sqrt 9
  EXPECT_FALSE(g_regular_exact(6, mpq_class(1)).has_value());  // 2 sqrt 5
  // the boundary itself, decided without rounding
  EXPECT_TRUE(g_regular_is_flat(5, mpq_class(2)));
  EXPECT_FALSE(g_regular_is_flat(5, mpq_class(201, 100)));
}

TEST(GBiregular, ListedValues) {
  EXPECT_NEAR(g_biregular(2, 3, std::sqrt(2.0)), std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(g_biregular(2, 3, 0.5), 1 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(g_biregular(5, 5, 3.0), 3.0 + 4.0 / 3.0, 1e-12);
  // independent evaluation of sqrt(a^2 + cbar + dbar + cbar dbar / a^2) at a^2 = 3
  EXPECT_NEAR(g_biregular(2, 3, std::sqrt(3.0)), std::sqrt(20.0 / 3.0), 1e-12);
  EXPECT_NEAR(std::sqrt(20.0 / 3.0), 2.581988897, 1e-9);
}

TEST(GBiregular, ReducesToRegular) {
  for (int c = 3; c <= 7; ++c) {
    for (double a = 0.0; a <= 10.0; a += 0.05) {
      EXPECT_NEAR(g_biregular(c, c, a), g_regular(c, a), 1e-12);
    }
  }
}

TEST(GBiregular, ContinuousAtThreshold) {
  const double knee = std::pow(1.0 * 2.0, 0.25);
  EXPECT_NEAR(g_biregular(2, 3, knee * (1 - 1e-9)), g_biregular(2, 3, knee * (1 + 1e-9)), 1e-8);
  EXPECT_THROW(g_biregular(3, 2, 1.0), InvalidInput);
  EXPECT_THROW(g_biregular(1, 3, 1.0), InvalidInput);
}

TEST(GBiregular, ExactMode) {
  // full tree of T_{2,3}: alpha^2 = 2, beta^2 = 6
  EXPECT_FALSE(g_biregular_exact(2, 3, mpq_class(1)).has_value());
  EXPECT_EQ(g_biregular_exact(3, 3, mpq_class(2)), mpq_class(3));  // same as g_3(2) = 2 + 2/2
  EXPECT_TRUE(g_biregular_is_flat(2, 5, mpq_class(1)));  // 1 <= 4^{1/4}
  EXPECT_FALSE(g_biregular_is_flat(2, 5, mpq_class(2)));
}

TEST(ExactSqrt, PerfectSquaresOnly) {
  EXPECT_EQ(exact_sqrt(mpq_class(9, 4)), mpq_class(3, 2));
  EXPECT_FALSE(exact_sqrt(mpq_class(2)).has_value());
}
