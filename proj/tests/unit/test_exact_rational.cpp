#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "curlspec/bessel.hpp"
#include "curlspec/exact_rational.hpp"
#include "oracles.hpp"

namespace exact = curlspec::exact;
using curlspec::BigRational;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CURLSPEC_TEST_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Certificate, ReferenceValuesAreExact) {
  const auto cert = exact::reference_certificate();
  EXPECT_EQ(cert.r_lower_check.to_string(), "11291/2464900");
  EXPECT_EQ(cert.sum_j0.to_string(), "-314127831054337257779422849/1474560000000000000000000000");
  EXPECT_EQ(cert.sum_j2.to_string(), "170519275716150776952821694135817/353894400000000000000000000000000");
  EXPECT_EQ(cert.combined.to_string(), "-143509674278087403655101304183/589824000000000000000000000000000");
  EXPECT_EQ(cert.remainder_term.to_string(), "729/81920");
  EXPECT_TRUE(cert.verdict);
}

TEST(Certificate, HypothesesAllHold) {
  const auto cert = exact::reference_certificate();
  const auto hyps = cert.hypotheses();
  ASSERT_EQ(hyps.size(), 4u);
  for (const auto& h : hyps) EXPECT_TRUE(h.holds) << h.name;
}

TEST(Certificate, GoldenFileMatches) {
  const auto golden = exact::parse_golden_values(read_data("appendix_d_golden.json"));
  EXPECT_EQ(golden.size(), 4u);
  EXPECT_TRUE(exact::golden_mismatches(exact::reference_certificate(), golden).empty());
  EXPECT_EQ(golden, exact::reference_golden_values());
}

TEST(Certificate, TamperedGoldenNamesTheField) {
  auto golden = exact::reference_golden_values();
  golden["sum_j2"] = golden["sum_j2"] + BigRational::parse("1/1000000000000000000000000000000000000");
  golden["unknown"] = BigRational(1);
  const auto mism = exact::golden_mismatches(exact::reference_certificate(), golden);
  ASSERT_EQ(mism.size(), 2u);
  EXPECT_NE(std::find(mism.begin(), mism.end(), "sum_j2"), mism.end());
  EXPECT_NE(std::find(mism.begin(), mism.end(), "unknown"), mism.end());
}

TEST(Certificate, JsonRoundTrip) {
  const auto cert = exact::reference_certificate();
  const auto parsed = exact::parse_golden_values(exact::to_json(cert));
  for (const auto& [name, value] : exact::certificate_values(cert)) {
    ASSERT_TRUE(parsed.count(name)) << name;
    EXPECT_EQ(parsed.at(name), value);
  }
  EXPECT_EQ(exact::to_json(cert), exact::to_json(exact::reference_certificate()));
}

TEST(Certificate, MalformedGoldenRejected) {
  EXPECT_THROW(exact::parse_golden_values("not json"), std::invalid_argument);
  EXPECT_THROW(exact::parse_golden_values("{}"), std::invalid_argument);
  EXPECT_THROW(exact::parse_golden_values(R"({"values":[{"name":"x"}]})"), std::invalid_argument);
}

TEST(Certificate, LargerTruncationShrinksRemainder) {
  const auto s = BigRational::parse("287/100");
  const auto m5 = exact::certify_negativity(s, 5);
  const auto m8 = exact::certify_negativity(s, 8);
  EXPECT_TRUE(m8.verdict);
  EXPECT_LT(m8.remainder_term, m5.remainder_term);
  EXPECT_EQ(m8.r_lower_check, m5.r_lower_check);
}

TEST(Certificate, TooFewTermsFailsHonestly) {
  const auto cert = exact::certify_negativity(BigRational::parse("287/100"), 1);
  EXPECT_FALSE(cert.verdict);
}

TEST(Certificate, CombinedBoundsTheTrueValue) {
  // (1+r)J_0(s) + (1-r)J_2(s) at the true r sits below the certified value.
  const double s = 2.87;
  const double r = std::sqrt(1 - s * s / (oracle::kPi * oracle::kPi));
  const double truth = (1 + r) * oracle::jn(0, s) + (1 - r) * oracle::jn(2, s);
  EXPECT_LT(truth, 0.0);
  EXPECT_LE(truth, exact::reference_certificate().combined.to_double());
}

TEST(Certificate, DomainErrors) {
  EXPECT_THROW(exact::certify_negativity(BigRational(0), 5), std::invalid_argument);
  EXPECT_THROW(exact::certify_negativity(BigRational(4), 5), std::invalid_argument);
  EXPECT_THROW(exact::certify_negativity(BigRational(1), 0), std::invalid_argument);
}

TEST(FactorialBound, HoldsOnRange) {
  EXPECT_TRUE(exact::factorial_lower_bound_holds(200));
}

TEST(PiBound, IsBelowPi) {
  EXPECT_EQ(exact::pi_lower_bound().to_string(), "157/50");
  EXPECT_LT(exact::pi_lower_bound().to_double(), oracle::kPi);
}
