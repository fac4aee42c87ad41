#include <gtest/gtest.h>

#include <anisoperim/error.hpp>
#include <anisoperim/manufactured.hpp>
#include <anisoperim/rearrange.hpp>

#include <limits>

#include "support/oracles.hpp"

using namespace anisoperim;
using Kind = RadialProfile::Kind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lambda(t) = 2 kappa (1 - t) at levels k / n, as the cone 1 - H° would give.
LevelSetProfile cone_profile(double kappa, int n) {
  LevelSetProfile p;
  p.max_value = 1.0;
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    p.levels.push_back(t);
    p.lambda.push_back(2 * kappa * (1 - t));
    p.mu.push_back(kappa * (1 - t) * (1 - t));
    p.lambda_prime.push_back(-2 * kappa);
    p.mu_prime.push_back(-2 * kappa * (1 - t));
    p.from_quadrature.push_back(true);
  }
  return p;
}

}  // namespace

TEST(RadialProfile, TableValidationAndEvaluation) {
  EXPECT_THROW(RadialProfile::from_table(Kind::DecreasingRearrangement, {0, 1}, {1}), Error);
  EXPECT_THROW(RadialProfile::from_table(Kind::DecreasingRearrangement, {0, 0}, {1, 0}), Error);
  try {
    RadialProfile::from_table(Kind::DecreasingRearrangement, {0, 1, 2}, {1, 0.5, 0.7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Profile);
  }
  const auto p = RadialProfile::from_table(Kind::PerimeterRearrangement, {0, 1, 3}, {2, 1, 0});
  EXPECT_DOUBLE_EQ(p(0.5), 1.5);
  EXPECT_DOUBLE_EQ(p(1), 1);
  EXPECT_DOUBLE_EQ(p(2), 0.5);
  EXPECT_DOUBLE_EQ(p(4), 0.0);
  EXPECT_DOUBLE_EQ(p.extended(4), -0.5);
  EXPECT_DOUBLE_EQ(p.slope_at(1), -1.0);
  EXPECT_DOUBLE_EQ(p.slope_at(1.5), -0.5);
  EXPECT_DOUBLE_EQ(p.max_abs_slope(), 1.0);
  EXPECT_GT(p.concavity_defect(), 0.0);  // slope rises from -1 to -0.5: convex kink
  const auto q = RadialProfile::from_table(Kind::PerimeterRearrangement, {0, 1, 2}, {1, 0.9, 0});
  EXPECT_LT(q.concavity_defect(), 0.0);
}

TEST(DecreasingRearrangement, ConstantData) {
  std::vector<std::pair<double, double>> s(100, {3.0, 0.01});
  const auto f = decreasing_rearrangement(s, 16);
  EXPECT_NEAR(f.s_max, 1.0, 1e-12);
  for (double v : f.values) EXPECT_EQ(v, 3.0);
  EXPECT_THROW(decreasing_rearrangement(s, 7), Error);
  EXPECT_THROW(decreasing_rearrangement(std::vector<std::pair<double, double>>{}, 16), Error);
  EXPECT_THROW(decreasing_rearrangement(std::vector<std::pair<double, double>>{{1.0, -1.0}}, 16), Error);
}

TEST(DecreasingRearrangement, PolarGaugeOnUnitDisk) {
  // f(x) = |x| on the unit disk: f*(s) = sqrt(1 - s / pi)
  const double h = 1.0 / 400;
  std::vector<std::pair<double, double>> s;
  for (int j = -400; j < 400; ++j)
    for (int i = -400; i < 400; ++i) {
      const double x = (i + 0.5) * h, y = (j + 0.5) * h;
      const double r = std::hypot(x, y);
      if (r < 1.0) s.emplace_back(r, h * h);
    }
  const auto f = decreasing_rearrangement(s, 256);
  for (std::size_t k = 0; k < f.breakpoints.size(); ++k) {
    const double sk = f.breakpoints[k];
    EXPECT_NEAR(f.values[k], std::sqrt(std::max(0.0, 1 - sk / oracle::pi)), 0.02) << sk;
  }
}

TEST(DecreasingRearrangement, FieldIsEquimeasurable) {
  const Norm n = Norm::ellipse(2, 1);
  const auto polar = PolarNorm::analytic(n);
  const auto f = manufactured_suite(n, polar)[4].build(1.0 / 256);
  const auto star = decreasing_rearrangement(f, 64);
  const double cell = f.grid().spacing * f.grid().spacing;
  std::vector<double> t;
  for (int k = 0; k < 64; ++k) t.push_back(f.max_value() * k / 64);
  const auto mu = distribution(f, t);
  for (std::size_t k = 0; k < t.size(); ++k) {
    // |{u* > t}| by bisection on the profile
    double lo = 0.0, hi = star.s_max;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (star(mid) > t[k] ? lo : hi) = mid;
    }
    EXPECT_LE(std::abs(lo - mu[k]), cell);
  }
}

TEST(PerimeterRearrangement, ConeInvertsLinearly) {
  const double kappa = 1.7;
  const auto p = cone_profile(kappa, 32);
  const auto u = perimeter_rearrangement(p);
  EXPECT_EQ(u.kind, Kind::PerimeterRearrangement);
  EXPECT_NEAR(u.s_max, 2 * kappa, 1e-12);
  for (double s = 0; s <= 2 * kappa; s += 0.01)
    EXPECT_NEAR(u(s), 1 - s / (2 * kappa), 1e-12);
  for (std::size_t k = 0; k < p.levels.size(); ++k) EXPECT_NEAR(u(p.lambda[k]), p.levels[k], 1e-9);
  EXPECT_EQ(u(2 * kappa), 0.0);
}

TEST(PerimeterRearrangement, RejectsNonMonotoneTable) {
  auto p = cone_profile(1.0, 16);
  p.lambda[5] = p.lambda[4] + 0.1;
  try {
    perimeter_rearrangement(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Profile);
  }
}

TEST(PerimeterRearrangement, PlateauUsesLargestLevel) {
  auto p = cone_profile(1.0, 8);
  p.top_perimeter = 0.1;  // a flat top of perimeter 0.1
  const auto u = perimeter_rearrangement(p);
  EXPECT_EQ(u(0.0), 1.0);
  EXPECT_EQ(u(0.05), 1.0);
  EXPECT_NEAR(u(0.1), 1.0, 1e-12);
  EXPECT_NEAR(u(0.25), 7.0 / 8.0, 1e-12);
}

TEST(StarSymmetrand, RadialFieldsAreFixedPoints) {
  for (const Norm& n : suite_norms()) {
    const auto polar = PolarNorm::analytic(n);
    for (double q : {1.0, 2.0}) {
      const double h = 1.0 / 128;
      const auto f = wulff_power_field(polar, 1.0, Vec2::Zero(), q, h);
      const auto star = star_symmetrand(f, n, polar, 64);
      EXPECT_NEAR(star.domain_radius, 1.0, 1e-3);
      double worst = 0.0;
      const auto& g = f.grid();
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          if (f.contains(g.node(i, j))) worst = std::max(worst, std::abs(star(g.node(i, j)) - f.node_value(i, j)));
      EXPECT_LE(worst, 2 * h * f.max_gradient_norm()) << n.describe() << " q=" << q;
      EXPECT_EQ(star.lp_norm(kInf), f.max_value());
    }
  }
}

TEST(ConvexSymmetrand, RadialFieldIsFixedPoint) {
  const Norm n = Norm::pnorm(4);
  const auto polar = PolarNorm::analytic(n);
  const double h = 1.0 / 128;
  const auto f = wulff_power_field(polar, 1.0, Vec2::Zero(), 2.0, h);
  const auto conv = convex_symmetrand(f, polar, 64);
  EXPECT_NEAR(conv.domain_radius, 1.0, 1e-3);
  for (const Vec2& x : {Vec2(0.1, 0.2), Vec2(-0.5, 0.3), Vec2(0.7, -0.1)})
    EXPECT_NEAR(conv(x), f.value_at(x), 2 * h * f.max_gradient_norm());
}

TEST(ConvexSymmetrand, PreservesLebesgueNormsAndMeasure) {
  for (const Norm& n : suite_norms()) {
    const auto polar = PolarNorm::analytic(n);
    for (const auto& recipe : manufactured_suite(n, polar)) {
      if (recipe.name != "thin-ellipse" && recipe.name != "softmin-pentagon") continue;
      const auto f = recipe.build(1.0 / 256);
      const auto conv = convex_symmetrand(f, polar, 64);
      for (double p : {1.0, 2.0}) {
        const double a = field_lp_norm(f, p), b = conv.lp_norm(p);
        EXPECT_LE(std::abs(a - b), 0.01 * a) << recipe.name << " p=" << p;
      }
      const double cell = f.grid().spacing * f.grid().spacing;
      std::vector<double> t;
      for (int k = 0; k < 64; k += 4) t.push_back(f.max_value() * k / 64);
      const auto mu = distribution(f, t);
      for (std::size_t k = 0; k < t.size(); ++k)
        EXPECT_LE(std::abs(area(conv.superlevel_set(t[k])) - mu[k]), cell) << recipe.name;
    }
  }
}

TEST(StarSymmetrand, PreservesLevelPerimeters) {
  for (const Norm& n : suite_norms()) {
    const auto polar = PolarNorm::analytic(n);
    const auto f = manufactured_suite(n, polar)[5].build(1.0 / 256);
    const auto prof = profile(f, n, 64);
    const auto star = star_symmetrand(prof, polar);
    for (std::size_t k = 0; k < prof.levels.size(); ++k) {
      const double p = perimeter_h(star.superlevel_set(prof.levels[k]), n);
      EXPECT_LE(std::abs(p - prof.lambda[k]), 1e-3 * prof.lambda[k]);
    }
    EXPECT_NEAR(star.superlevel_radius(0.0), star.domain_radius, 1e-9);
    EXPECT_THROW(star.superlevel_set(f.max_value() * 1.01), Error);
  }
}

TEST(Lp, ThinDomainHasStrictlyLargerSymmetrand) {
  // 4:1 ellipse, Euclidean: Omega^star is a disk of larger area than Omega
  const auto f = linear_image_field(Norm::euclidean(), Eigen::Vector2d(1.0, 4.0).asDiagonal(),
                                    Vec2::Zero(), 1.0 / 256, "aspect-4");
  const auto star = star_symmetrand(f, Norm::euclidean(), PolarNorm::analytic(Norm::euclidean()));
  const auto rows = lp_report(f, star, {1.0, 2.0, kInf});
  EXPECT_GT(rows[0].margin, 0.05);
  EXPECT_GT(rows[1].margin, 0.0);
  EXPECT_LE(std::abs(rows[2].margin), 1e-9);
  EXPECT_TRUE(lp_checks(rows).all_pass());
}

TEST(Lp, RejectsSmallExponent) {
  const auto f = wulff_power_field(PolarNorm::analytic(Norm::euclidean()), 1.0, Vec2::Zero(), 2.0,
                                   1.0 / 32);
  EXPECT_THROW(field_lp_norm(f, 0.5), Error);
  EXPECT_NEAR(field_lp_norm(f, 1.0), oracle::pi / 2, 1e-2);
}

TEST(RadialHessianIntegral, HandValues) {
  // w = 1 - r^2 on [0, 1] with kappa = pi: pi int 8 r^3 = 2 pi
  std::vector<double> r, w, d;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i / 2000.0;
    r.push_back(x);
    w.push_back(1 - x * x);
    d.push_back(-2 * x);
  }
  auto prof = RadialProfile::from_table(Kind::RadialSolution, r, w);
  EXPECT_THROW(radial_hessian_integral(prof, oracle::pi), Error);
  prof.node_derivative = d;
  EXPECT_NEAR(radial_hessian_integral(prof, oracle::pi), 2 * oracle::pi, 1e-5);

  const double kappa = 1.3;
  const auto u = RadialProfile::from_table(Kind::PerimeterRearrangement, {0, 2 * kappa}, {1, 0});
  EXPECT_NEAR(radial_hessian_integral(u, kappa), kappa, 1e-12);
  const auto u2 = RadialProfile::from_table(Kind::PerimeterRearrangement, {0, 2 * kappa}, {2, 0});
  EXPECT_NEAR(radial_hessian_integral(u2, kappa), 8 * kappa, 1e-12);

  const auto dec = RadialProfile::from_table(Kind::DecreasingRearrangement, {0, 1}, {1, 0});
  EXPECT_THROW(radial_hessian_integral(dec, kappa), Error);
}

TEST(PolyaSzego, EqualityAndSign) {
  const auto polar = PolarNorm::analytic(Norm::euclidean());
  const auto radial = polya_szego_report(
      wulff_power_field(polar, 1.0, Vec2::Zero(), 2.0, 1.0 / 256), Norm::euclidean(), polar);
  EXPECT_LE(std::abs(radial.margin), 0.02);
  EXPECT_NEAR(radial.star_integral, 2 * oracle::pi, 0.01 * 2 * oracle::pi);

  const auto suite = manufactured_suite(Norm::euclidean(), polar);
  const auto rect = polya_szego_report(suite[8].build(1.0 / 256), Norm::euclidean(), polar);
  EXPECT_GT(rect.margin, 0.0);

  const auto dist = polya_szego_report(distance_field_ellipse(0.5, 0.3, 0.3, 1.0 / 256),
                                       Norm::euclidean(), polar);
  EXPECT_LE(std::abs(dist.margin), 0.02);
  EXPECT_NEAR(dist.star_integral, oracle::distance_cube_hessian_integral(0.3),
              0.01 * oracle::distance_cube_hessian_integral(0.3));
}

TEST(RearrangementChecks, PassOnSuiteSample) {
  for (const Norm& n : suite_norms()) {
    const auto polar = PolarNorm::analytic(n);
    for (const auto& recipe : manufactured_suite(n, polar)) {
      if (recipe.name != "wulff-shifted" && recipe.name != "superellipse") continue;
      const auto rep = rearrangement_checks(recipe.build(1.0 / 128), n, polar);
      for (const auto& row : rep.rows()) EXPECT_TRUE(row.pass) << recipe.name << " " << row.name << " " << row.value;
    }
  }
}
