#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "curlspec/antisym_tube.hpp"
#include "curlspec/symmetry_decider.hpp"
#include "oracles.hpp"

namespace decider = curlspec::decider;
namespace antisym = curlspec::antisym;

namespace {

const antisym::JStarEstimate& jstar() {
  static const auto value = antisym::j_star();
  return value;
}

}  // namespace

TEST(StandardTorusBounds, ClosedForms) {
  const auto b = decider::theorem1_bounds(0.5, 1.0, 3.0);
  EXPECT_NEAR(b.sym_upper, std::sqrt(oracle::kJ01 * oracle::kJ01 / 0.25 + 3.0 / (4.0 * 2.25)), 1e-13);
  EXPECT_NEAR(b.antisym_lower, std::sqrt(1.0 / 3.0) * 3.0 / 0.5, 1e-13);
  EXPECT_THROW(decider::theorem1_bounds(1.0, 1.0, 3.0), std::invalid_argument);
  EXPECT_THROW(decider::theorem1_bounds(0.0, 1.0, 3.0), std::invalid_argument);
}

TEST(StandardTorusBounds, SmallRadiusLimits) {
  const double js = jstar().lower_bound();
  const double a = 1e-6;
  const auto b = decider::theorem1_bounds(a, 1.0, js);
  EXPECT_NEAR(a * b.sym_upper, oracle::kJ01, 1e-10);
  EXPECT_NEAR(a * b.antisym_lower, js, 1e-5);
}

TEST(StandardTorusBounds, CrossoverSeparatesVerdicts) {
  const double astar = decider::crossover_radius(1.0, jstar().lower_bound());
  EXPECT_GT(astar, 0.05);
  EXPECT_LT(astar, 1.0);
  const auto below = decider::decide(decider::StandardTorus{astar * (1 - 1e-3), 1.0}, jstar());
  const auto above = decider::decide(decider::StandardTorus{astar * (1 + 1e-3), 1.0}, jstar());
  EXPECT_EQ(below.verdict, decider::Verdict::Symmetric);
  EXPECT_LT(below.margin, 0.05);
  EXPECT_EQ(above.verdict, decider::Verdict::Inconclusive);
}

TEST(Decide, ThinTorusIsSymmetric) {
  const auto v = decider::decide(decider::StandardTorus{0.05, 1.0}, jstar());
  EXPECT_EQ(v.verdict, decider::Verdict::Symmetric);
  EXPECT_LT(v.sym_bound, v.antisym_bound);
  EXPECT_DOUBLE_EQ(v.margin, std::abs(v.sym_bound - v.antisym_bound));
}

TEST(Decide, StandardTorusNeverAsymmetric) {
  for (double a = 0.01; a < 0.99; a += 0.01) {
    EXPECT_NE(decider::decide(decider::StandardTorus{a, 1.0}, jstar()).verdict, decider::Verdict::Asymmetric);
  }
}

TEST(Decide, VerdictStableUnderTinyPerturbation) {
  for (double a : {0.02, 0.1, 0.2, 0.3}) {
    const auto v = decider::decide(decider::StandardTorus{a, 1.0}, jstar());
    if (v.margin <= 1e-6) continue;
    const auto w = decider::decide(decider::StandardTorus{a * (1 + 1e-9), 1.0 * (1 - 1e-9)}, jstar());
    EXPECT_EQ(v.verdict, w.verdict);
  }
}

TEST(Decide, MarginFloorGivesInconclusive) {
  decider::DeciderConfig cfg;
  cfg.margin_floor = 1e6;
  EXPECT_EQ(decider::decide(decider::StandardTorus{0.05, 1.0}, jstar(), cfg).verdict, decider::Verdict::Inconclusive);
}

TEST(AnnularFamilyBounds, ThresholdAndMonotonicity) {
  const auto p = antisym::find_theorem2_parameters(1.0);
  const auto t = decider::theorem2_bounds(p);
  EXPECT_NEAR(t.sym_lower, std::sqrt(p.lambda * p.lambda + 0.75), 1e-13);
  EXPECT_GE(t.n_threshold, 1);
  EXPECT_LE(t.antisym_upper(t.n_threshold), t.sym_lower);
  if (t.n_threshold > 1) EXPECT_GT(t.antisym_upper(t.n_threshold - 1), t.sym_lower);
  for (int n = 1; n < 200; ++n) EXPECT_GT(t.antisym_upper(n), t.antisym_upper(n + 1));
  EXPECT_NEAR(t.antisym_upper(1000000), p.lambda, 1e-9);
  EXPECT_LT(p.lambda, t.sym_lower);
}

TEST(AnnularFamilyBounds, RejectsNonRoot) {
  EXPECT_THROW(decider::theorem2_bounds(0.3, 1.0, 2.0), std::domain_error);
  EXPECT_THROW(decider::theorem2_bounds(0.3, 1.0, 1.0), std::domain_error);  // 2(b-a)/L >= 1
}

TEST(Decide, FamilyAsymmetricPastThreshold) {
  const auto p = antisym::find_theorem2_parameters(1.0);
  const auto t = decider::theorem2_bounds(p);
  for (int n = 1; n <= t.n_threshold + 10; ++n) {
    const auto v = decider::decide(decider::AnnularCylinderFamily{p.a, p.b, p.length, n}, jstar());
    if (n >= t.n_threshold) {
      EXPECT_EQ(v.verdict, decider::Verdict::Asymmetric) << n;
      EXPECT_GT(v.sym_bound, v.antisym_bound);
      EXPECT_LT(std::abs(antisym::annulus_determinant({p.a, p.b}, {n, 1, n * p.length}, p.lambda)), 1e-6);
    } else {
      EXPECT_EQ(v.verdict, decider::Verdict::Inconclusive) << n;
    }
  }
}

TEST(Decide, FamilyOffRootIsInconclusive) {
  const auto v = decider::decide(decider::AnnularCylinderFamily{0.3, 1.0, 2.0, 50}, jstar());
  EXPECT_EQ(v.verdict, decider::Verdict::Inconclusive);
}

TEST(Decide, InvalidSpecsThrow) {
  EXPECT_THROW(decider::validate(decider::StandardTorus{2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(decider::validate(decider::AnnularCylinderFamily{0.5, 1.0, 1.0, 0}), std::invalid_argument);
  EXPECT_THROW(decider::validate(decider::AnnularCylinderFamily{0.5, 1.0, -1.0, 1}), std::invalid_argument);
}

TEST(Decide, CrossSectionOfSpec) {
  const auto d = decider::cross_section(decider::StandardTorus{0.2, 1.0});
  EXPECT_DOUBLE_EQ(d.r_min(), 0.8);
  const auto c = decider::cross_section(decider::AnnularCylinderFamily{0.5, 1.0, 2.0, 3});
  EXPECT_DOUBLE_EQ(c.z_max(), 3.0);
}

TEST(Decide, JsonRecord) {
  const decider::TorusSpec spec = decider::StandardTorus{0.05, 1.0};
  const auto v = decider::decide(spec, jstar());
  const auto doc = nlohmann::json::parse(decider::to_json(v, spec, jstar()));
  EXPECT_EQ(doc["verdict"], "Symmetric");
  EXPECT_DOUBLE_EQ(doc["margin"].get<double>(), v.margin);
  EXPECT_EQ(doc["inputs"]["kind"], "standard_torus");
  EXPECT_DOUBLE_EQ(doc["j_star"]["lower_bound_used"].get<double>(), jstar().lower_bound());
}
