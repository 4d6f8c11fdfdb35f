#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "curlspec/bessel.hpp"
#include "oracles.hpp"

namespace bessel = curlspec::bessel;
using curlspec::BigRational;

TEST(BesselJ, MatchesStandardLibraryAcrossRegimes) {
  for (int n = 0; n <= 30; ++n) {
    for (double x = 0.0; x <= 80.0; x += 0.173) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      EXPECT_NEAR(bessel::j(n, x), ref, 5e-14) << "n=" << n << " x=" << x;
    }
  }
}

TEST(BesselJ, LargeArgument) {
  for (double x : {100.0, 250.5, 1000.0, 12345.6}) {
    for (int n : {0, 1, 2, 7}) {
      EXPECT_NEAR(bessel::j(n, x), std::cyl_bessel_j(static_cast<double>(n), x), 1e-13);
    }
  }
}

TEST(BesselJ, NegativeOrderAndArgument) {
  for (int m = 1; m <= 6; ++m) {
    const double x = 1.7 + m;
    EXPECT_NEAR(bessel::j(-m, x), oracle::jn(-m, x), 1e-14);
    EXPECT_NEAR(bessel::j(m, -x), oracle::jn(m, -x), 1e-14);
  }
}

TEST(BesselY, MatchesStandardLibrary) {
  for (int n = 0; n <= 20; ++n) {
    for (double x = 0.05; x <= 60.0; x += 0.211) {
      const double ref = std::cyl_neumann(static_cast<double>(n), x);
      EXPECT_NEAR(bessel::y(n, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "n=" << n << " x=" << x;
    }
  }
  EXPECT_NEAR(bessel::y(-3, 2.5), oracle::yn(-3, 2.5), 1e-12);
}

TEST(BesselDerivatives, AgreeWithCentralDifferences) {
  const double step = 1e-5;
  for (int n = 0; n <= 5; ++n) {
    for (double x : {0.3, 1.9, 7.25, 31.0}) {
      const double dj = (oracle::jn(n, x + step) - oracle::jn(n, x - step)) / (2 * step);
      const double dy = (oracle::yn(n, x + step) - oracle::yn(n, x - step)) / (2 * step);
      EXPECT_NEAR(bessel::j_prime(n, x), dj, 1e-9);
      EXPECT_NEAR(bessel::y_prime(n, x), dy, 1e-8 * std::max(1.0, std::abs(dy)));
    }
  }
}

TEST(BesselSequence, MatchesSingleEvaluations) {
  for (double x : {0.0, 0.5, 3.0, 17.0, 40.0}) {
    const auto seq = bessel::j_sequence(20, x);
    ASSERT_EQ(seq.size(), 21u);
    for (int n = 0; n <= 20; ++n) EXPECT_NEAR(seq[n], std::cyl_bessel_j(n, x), 5e-14);
  }
}

TEST(BesselErrors, DomainChecks) {
  EXPECT_THROW(bessel::j(65, 1.0), std::out_of_range);
  EXPECT_THROW(bessel::j(0, std::nan("")), std::domain_error);
  EXPECT_THROW(bessel::y(0, 0.0), std::domain_error);
  EXPECT_THROW(bessel::y(1, -1.0), std::domain_error);
  EXPECT_THROW(bessel::zero({-1, 1}), std::invalid_argument);
  EXPECT_THROW(bessel::zero({0, 0}), std::invalid_argument);
}

TEST(BesselZeros, TabulatedValues) {
  EXPECT_NEAR(bessel::zero({0, 1}), oracle::kJ01, 1e-13);
  EXPECT_NEAR(bessel::zero({0, 2}), 5.520078110286311, 1e-13);
  EXPECT_NEAR(bessel::zero({1, 1}), oracle::kJ11, 1e-13);
  EXPECT_NEAR(bessel::zero({1, 2}), 7.015586669815619, 1e-13);
  EXPECT_NEAR(bessel::zero({2, 1}), 5.135622301840683, 1e-13);
  EXPECT_NEAR(bessel::zero({5, 3}), 15.70017407971167, 1e-12);
}

TEST(BesselZeros, AreRootsAndInterlace) {
  for (int m = 0; m <= 10; ++m) {
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double z = bessel::zero({m, k});
      EXPECT_NEAR(std::cyl_bessel_j(m, z), 0.0, 1e-14);
      EXPECT_GT(z, prev);
      prev = z;
    }
    EXPECT_LT(bessel::zero({m, 1}), bessel::zero({m + 1, 1}));
    EXPECT_LT(bessel::zero({m + 1, 1}), bessel::zero({m, 2}));
  }
}

TEST(TaylorSeries, ExactSmallCases) {
  EXPECT_EQ(bessel::taylor_partial_sum({0, 3, BigRational(0)}).to_string(), "1");
  EXPECT_EQ(bessel::taylor_partial_sum({1, 3, BigRational(0)}).to_string(), "0");
  // J_0 through i = 1 at x = 2: 1 - 1 = 0; through i = 2: + 1/4.
  EXPECT_EQ(bessel::taylor_partial_sum({0, 1, BigRational(2)}).to_string(), "0");
  EXPECT_EQ(bessel::taylor_partial_sum({0, 2, BigRational(2)}).to_string(), "1/4");
  // J_2 leading term (x/2)^2 / 2 at x = 1: 1/8 - 1/96.
  EXPECT_EQ(bessel::taylor_partial_sum({2, 1, BigRational(1)}).to_string(), "11/96");
}

TEST(TaylorSeries, RemainderBoundValues) {
  EXPECT_EQ(bessel::taylor_remainder_bound(1).to_string(), "81/16");
  EXPECT_EQ(bessel::taylor_remainder_bound(5).to_string(), "729/163840");
  EXPECT_THROW(bessel::taylor_remainder_bound(0), std::invalid_argument);
  EXPECT_THROW(bessel::taylor_partial_sum({-1, 2, BigRational(1)}), std::invalid_argument);
}

TEST(TaylorSeries, TailIsWithinBoundOnRandomRationals) {
  auto gen = oracle::rng(11);
  std::uniform_int_distribution<long long> num(-3000, 3000);
  for (int trial = 0; trial < 60; ++trial) {
    const BigRational x(num(gen), 1000);
    for (int n : {0, 1, 2, 5}) {
      for (int m : {1, 3, 5, 8}) {
        const double partial = bessel::taylor_partial_sum({n, m, x}).to_double();
        const double bound = bessel::taylor_remainder_bound(m).to_double();
        EXPECT_LE(std::abs(oracle::jn(n, x.to_double()) - partial), bound) << "n=" << n << " M=" << m;
      }
    }
  }
}

TEST(TaylorSeries, ConvergesToFloatingValue) {
  const auto x = BigRational::parse("287/100");
  EXPECT_NEAR(bessel::taylor_partial_sum({0, 20, x}).to_double(), std::cyl_bessel_j(0.0, 2.87), 1e-15);
  EXPECT_NEAR(bessel::taylor_partial_sum({2, 20, x}).to_double(), std::cyl_bessel_j(2.0, 2.87), 1e-15);
}
