#include <gtest/gtest.h>

#include <anisoperim/error.hpp>
#include <anisoperim/field.hpp>
#include <anisoperim/manufactured.hpp>

#include "support/oracles.hpp"

using namespace anisoperim;

namespace {

struct Pair {
  Norm norm;
  PolarNorm polar;
  double kappa;
};

std::vector<Pair> pairs() {
  std::vector<Pair> out;
  for (const Norm& n : suite_norms()) {
    const auto p = PolarNorm::analytic(n);
    out.push_back({n, p, kappa_of(p)});
  }
  return out;
}

}  // namespace

TEST(Extraction, WulffLevelSetMatchesAnalyticShape) {
  for (const auto& [norm, polar, kappa] : pairs()) {
    const double h = 1.0 / 128;
    const auto f = wulff_power_field(polar, 1.0, Vec2::Zero(), 1.0, h);
    const auto c = extract_level_set(f, 0.5);
    for (const auto& v : c.vertices()) EXPECT_NEAR(polar(v), 0.5, h) << norm.describe();
    EXPECT_NEAR(area(c), kappa * 0.25, 4 * h * h * c.size() * 0.1);
  }
}

TEST(Extraction, ZeroLevelIsBoundaryAndTopIsEmpty) {
  const auto f = wulff_power_field(PolarNorm::analytic(Norm::euclidean()), 1.0, Vec2::Zero(), 2.0,
                                   1.0 / 64);
  EXPECT_EQ(extract_level_set(f, 0.0).size(), f.boundary().size());
  try {
    extract_level_set(f, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyLevel);
  }
  EXPECT_THROW(extract_level_set(f, -0.1), Error);
}

TEST(Extraction, OutputIsCounterclockwiseAndConvex) {
  const Norm n = Norm::pnorm(4);
  for (const auto& recipe : manufactured_suite(n, PolarNorm::analytic(n))) {
    const auto f = recipe.build(1.0 / 64);
    for (double t : {0.1, 0.4, 0.8}) {
      const auto c = extract_level_set(f, t * f.max_value());
      EXPECT_GT(area(c), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i)
        EXPECT_GE(cross(c.edge(i), c.edge((i + 1) % c.size())), -1e-12 * c.edge(i).squaredNorm());
    }
  }
}

TEST(Distribution, DiskParaboloid) {
  const auto f = wulff_power_field(PolarNorm::analytic(Norm::euclidean()), 1.0, Vec2::Zero(), 2.0,
                                   1.0 / 256);
  const std::vector<double> t = {0.0, 0.25, 0.5, 0.75};
  const auto mu = distribution(f, t);
  for (std::size_t k = 0; k < t.size(); ++k)
    EXPECT_NEAR(mu[k], oracle::pi * (1 - t[k]), 1e-3 * oracle::pi);
}

TEST(Profile, WulffConeIsLinear) {
  for (const auto& [norm, polar, kappa] : pairs()) {
    const auto f = wulff_power_field(polar, 1.0, Vec2::Zero(), 1.0, 1.0 / 256);
    const auto p = profile(f, norm, 32);
    ASSERT_EQ(p.levels.size(), 32u);
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
      const double t = p.levels[k];
      EXPECT_NEAR(p.levels[k], k / 32.0, 1e-15);
      EXPECT_NEAR(p.lambda[k], 2 * kappa * (1 - t), 2e-3 * 2 * kappa) << norm.describe();
      EXPECT_NEAR(p.mu[k], kappa * (1 - t) * (1 - t), 2e-3 * kappa) << norm.describe();
      if (t > 0.0 && t < 0.9) EXPECT_NEAR(p.lambda_prime[k], -2 * kappa, 0.01 * 2 * kappa);
    }
  }
}

TEST(Profile, DiskParaboloidMuPrime) {
  const auto f = wulff_power_field(PolarNorm::analytic(Norm::euclidean()), 1.0, Vec2::Zero(), 2.0,
                                   1.0 / 256);
  const auto p = profile(f, Norm::euclidean(), 16);
  for (std::size_t k = 1; k + 2 < p.levels.size(); ++k) {
    EXPECT_NEAR(p.mu[k], oracle::pi * (1 - p.levels[k]), 1e-3 * oracle::pi);
    EXPECT_NEAR(p.mu_prime[k], -oracle::pi, 0.01 * oracle::pi);
    EXPECT_TRUE(p.from_quadrature[k]);
  }
}

TEST(Profile, InvariantsOverSuite) {
  for (const auto& [norm, polar, kappa] : pairs()) {
    for (const auto& recipe : manufactured_suite(norm, polar)) {
      const auto f = recipe.build(1.0 / 128);
      const auto p = profile(f, norm, 32);
      const double gmax = f.max_gradient_norm();
      const double lam0 = p.lambda.front();
      for (std::size_t k = 0; k < p.levels.size(); ++k) {
        if (k > 0) {
          EXPECT_LT(p.mu[k], p.mu[k - 1]);
          EXPECT_LT(p.lambda[k], p.lambda[k - 1]);
        }
        EXPECT_GE(p.lambda[k] * p.lambda[k] - 4 * kappa * p.mu[k], -1e-6 * lam0 * lam0)
            << recipe.name;
        EXPECT_LE(p.lambda_prime[k], -2 * kappa / (norm.beta() * gmax) + 1e-6)
            << recipe.name << " " << norm.describe();
      }
      if (recipe.positive_rhs) EXPECT_LE(p.lambda_prime_fd_mismatch, 0.02) << recipe.name;
    }
  }
}

TEST(Profile, RejectsTooFewLevels) {
  const auto f = wulff_power_field(PolarNorm::analytic(Norm::euclidean()), 1.0, Vec2::Zero(), 2.0,
                                   1.0 / 32);
  EXPECT_THROW(profile(f, Norm::euclidean(), 4), Error);
}

TEST(Quadrature, WeightsSumToArea) {
  const auto f = manufactured_suite(Norm::euclidean(), PolarNorm::analytic(Norm::euclidean()))[4]
                     .build(1.0 / 128);
  double w = 0.0;
  for_each_quadrature_point(f, 0.0, [&](const Vec2&, double a) { w += a; });
  EXPECT_NEAR(w, area(f.boundary()), 1e-3 * area(f.boundary()));
  double wt = 0.0;
  for_each_quadrature_point(f, 0.5, [&](const Vec2&, double a) { wt += a; });
  EXPECT_NEAR(wt, area(extract_level_set(f, 0.5)), 2e-3 * wt);
}
