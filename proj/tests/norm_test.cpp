#include <gtest/gtest.h>

#include <anisoperim/error.hpp>
#include <anisoperim/norm.hpp>

#include <Eigen/Eigenvalues>

#include <limits>
#include <random>

#include "support/oracles.hpp"

using namespace anisoperim;

namespace {

std::vector<Vec2> sample_points(int n, unsigned seed, double scale = 3.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < n) {
    Vec2 v(u(rng), u(rng));
    if (v.norm() > 1e-3) out.push_back(v);
  }
  return out;
}

std::vector<Norm> builtins() {
  return {Norm::euclidean(), Norm::ellipse(2, 1), Norm::ellipse(0.7, 1.9), Norm::pnorm(4),
          Norm::pnorm(3)};
}

}  // namespace

TEST(NormEval, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(Norm::euclidean()(Vec2(3, 4)), 5.0);
  EXPECT_DOUBLE_EQ(Norm::ellipse(2, 1)(Vec2(2, 0)), 1.0);
  for (const Norm& n : builtins()) EXPECT_EQ(n(Vec2::Zero()), 0.0);
  for (const Vec2& v : sample_points(50, 1)) {
    EXPECT_NEAR(Norm::ellipse(2, 1)(v), oracle::ellipse_norm(2, 1, v.x(), v.y()), 1e-14);
    EXPECT_NEAR(Norm::pnorm(4)(v), oracle::pnorm(4, v.x(), v.y()), 1e-13);
  }
}

TEST(NormEval, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    Norm::euclidean()(Vec2(nan, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
  const auto polar = PolarNorm::analytic(Norm::ellipse(2, 1));
  EXPECT_THROW(polar(Vec2(std::numeric_limits<double>::infinity(), 0)), Error);
}

TEST(NormConstruction, RejectsSubquadraticP) {
  try {
    Norm::pnorm(1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
  EXPECT_THROW(Norm::ellipse(0, 1), Error);
  EXPECT_NO_THROW(Norm::pnorm(2));
}

TEST(NormConstruction, GaugeBoundsBracketUnitDirections) {
  for (const Norm& n : builtins()) {
    EXPECT_GT(n.alpha(), 0.0);
    EXPECT_GE(n.beta(), n.alpha());
    for (int k = 0; k < 997; ++k) {
      const Vec2 e = unit_direction(2 * oracle::pi * k / 997.0);
      EXPECT_GE(n(e), n.alpha() * (1 - 1e-6));
      EXPECT_LE(n(e), n.beta() * (1 + 1e-6));
    }
  }
  // ellipse (2,1): min 1/2 on the x axis, max 1 on the y axis
  EXPECT_NEAR(Norm::ellipse(2, 1).alpha(), 0.5, 1e-6);
  EXPECT_NEAR(Norm::ellipse(2, 1).beta(), 1.0, 1e-6);
}

TEST(NormProperty, Homogeneity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-10, 10);
  for (const Norm& n : builtins()) {
    for (const Vec2& v : sample_points(100, 2)) {
      const double s = t(rng);
      EXPECT_LE(std::abs(n(s * v) - std::abs(s) * n(v)), 1e-10 * n(v) * std::abs(s));
    }
  }
}

TEST(NormDerivatives, ClosedForms) {
  const Vec2 g = Norm::euclidean().gradient(Vec2(0, 2));
  EXPECT_NEAR(g.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.y(), 1.0, 1e-15);
  const Vec2 ge = Norm::ellipse(2, 1).gradient(Vec2(1, 0));
  EXPECT_NEAR(ge.x(), 0.5, 1e-15);
  EXPECT_NEAR(ge.y(), 0.0, 1e-15);
  try {
    Norm::euclidean().gradient(Vec2::Zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularPoint);
  }
  EXPECT_THROW(Norm::pnorm(4).hessian(Vec2::Zero()), Error);
  EXPECT_THROW(Norm::ellipse(2, 1).f_hessian(Vec2::Zero()), Error);
}

TEST(NormDerivatives, GradientMatchesFiniteDifferencesOfOracle) {
  for (const Vec2& v : sample_points(40, 3)) {
    const double h = 1e-6;
    const auto f = [](double x, double y) { return oracle::pnorm(4, x, y); };
    const Vec2 fd((f(v.x() + h, v.y()) - f(v.x() - h, v.y())) / (2 * h),
                  (f(v.x(), v.y() + h) - f(v.x(), v.y() - h)) / (2 * h));
    EXPECT_LT((Norm::pnorm(4).gradient(v) - fd).norm(), 1e-7);
  }
}

TEST(NormDerivatives, HomogeneityDegrees) {
  for (const Norm& n : builtins()) {
    for (const Vec2& v : sample_points(30, 4)) {
      EXPECT_LT((n.gradient(2 * v) - n.gradient(v)).norm(), 1e-9);
      EXPECT_LT((n.hessian(2 * v) - 0.5 * n.hessian(v)).norm(), 1e-9 * (1 + n.hessian(v).norm()));
    }
  }
}

TEST(NormDerivatives, FHessianClosedForms) {
  for (const Vec2& v : sample_points(30, 5)) {
    EXPECT_LT((Norm::euclidean().f_hessian(v) - Mat2::Identity()).norm(), 1e-12);
    const Mat2 fe = Norm::ellipse(2, 1).f_hessian(v);
    EXPECT_NEAR(fe(0, 0), 0.25, 1e-12);
    EXPECT_NEAR(fe(1, 1), 1.0, 1e-12);
    EXPECT_NEAR(fe(0, 1), 0.0, 1e-12);
    EXPECT_NEAR(fe.determinant(), 0.25, 1e-12);
    EXPECT_LT((Norm::pnorm(4).f_hessian(-v) - Norm::pnorm(4).f_hessian(v)).norm(), 1e-12);
  }
}

TEST(NormProperty, FHessianPositiveDefinite) {
  for (const Norm& n : builtins()) {
    for (const Vec2& v : sample_points(100, 6)) {
      const Mat2 f = n.f_hessian(v);
      EXPECT_NEAR(f(0, 1), f(1, 0), 1e-12);
      const Eigen::SelfAdjointEigenSolver<Mat2> es(f);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
  }
}

TEST(CustomNorm, FiniteDifferenceGradientMatchesAnalytic) {
  const Norm custom = Norm::custom([](const Vec2& v) { return v.norm(); });
  EXPECT_FALSE(custom.has_analytic_derivatives());
  for (const Vec2& v : sample_points(32, 7)) {
    EXPECT_LT((custom.gradient(v) - v / v.norm()).norm(), 1e-7);
  }
}

TEST(PolarNorm, ClosedFormValues) {
  EXPECT_NEAR(PolarNorm::analytic(Norm::euclidean())(Vec2(3, 4)), 5.0, 1e-15);
  EXPECT_NEAR(PolarNorm::analytic(Norm::ellipse(2, 1))(Vec2(1, 0)), 2.0, 1e-15);
  const auto p4 = PolarNorm::analytic(Norm::pnorm(4));
  for (const Vec2& v : sample_points(20, 8)) {
    EXPECT_NEAR(p4(v), oracle::pnorm_polar(4, v.x(), v.y()), 1e-13);
  }
}

TEST(PolarNorm, NumericMatchesBruteForceSupremum) {
  const auto numeric = PolarNorm::numeric(Norm::ellipse(2, 1));
  const auto h = [](double x, double y) { return oracle::ellipse_norm(2, 1, x, y); };
  for (const Vec2& v : sample_points(64, 9)) {
    const double ref = oracle::brute_polar(h, v.x(), v.y());
    EXPECT_LE(std::abs(numeric(v) - ref), 1e-6 * ref);
    EXPECT_LE(std::abs(numeric(v) - oracle::ellipse_polar(2, 1, v.x(), v.y())), 1e-9 * ref);
  }
}

TEST(PolarNorm, NumericAndAnalyticModesAgree) {
  for (const Norm& n : builtins()) {
    const auto a = PolarNorm::analytic(n);
    const auto m = PolarNorm::numeric(n);
    for (const Vec2& v : sample_points(50, 10)) {
      EXPECT_LE(std::abs(a(v) - m(v)), 1e-6 * a(v));
      EXPECT_LT((a.gradient(v) - m.gradient(v)).norm(), 1e-5);
    }
  }
}

TEST(PolarNorm, NumericRejectsCoarseScan) {
  try {
    PolarNorm::numeric(Norm::euclidean(), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
}

TEST(PolarNorm, InvolutionRecoversBaseNorm) {
  // H°° = H: numeric polar of a custom norm that evaluates H°.
  for (const Norm& n : builtins()) {
    const auto polar = PolarNorm::analytic(n);
    const Norm dual = Norm::custom([polar](const Vec2& v) { return polar(v); });
    const auto back = PolarNorm::numeric(dual);
    for (const Vec2& v : sample_points(30, 12)) EXPECT_LE(std::abs(back(v) - n(v)), 1e-5 * n(v));
  }
}

TEST(PolarNorm, FHessianIsInverseOfBaseAtDualPoint) {
  const Norm n = Norm::ellipse(2, 1);
  const auto polar = PolarNorm::analytic(n);
  for (const Vec2& v : sample_points(20, 13)) {
    // F° = (a^2 x^2 + b^2 y^2)/2 has Hessian diag(4, 1)
    const Mat2 f = polar.f_hessian(v);
    EXPECT_NEAR(f(0, 0), 4.0, 1e-10);
    EXPECT_NEAR(f(1, 1), 1.0, 1e-10);
    EXPECT_NEAR(f(0, 1), 0.0, 1e-10);
  }
}

TEST(IdentityResiduals, AnalyticPolarsAreExact) {
  EXPECT_LT(identity_residuals(Norm::euclidean(), PolarNorm::analytic(Norm::euclidean()), 100).max(),
            1e-12);
  const Norm e = Norm::ellipse(2, 1);
  EXPECT_LT(identity_residuals(e, PolarNorm::analytic(e), 100).max(), 1e-10);
  const Norm p = Norm::pnorm(4);
  EXPECT_LT(identity_residuals(p, PolarNorm::analytic(p), 100).max(), 1e-10);
}

TEST(IdentityResiduals, NumericPolarsWithinLooseTolerance) {
  for (const Norm& n : builtins()) {
    EXPECT_LT(identity_residuals(n, PolarNorm::numeric(n), 100).max(), 1e-5) << n.describe();
  }
}

TEST(IdentityResiduals, WrongPolarIsDetected) {
  // Polar of the (2,1) ellipse with the axes swapped.
  const Norm custom = Norm::custom(
      [](const Vec2& v) { return oracle::ellipse_norm(2, 1, v.x(), v.y()); },
      [](const Vec2& v) {
        const double h = oracle::ellipse_norm(2, 1, v.x(), v.y());
        return Vec2(v.x() / (4 * h), v.y() / h);
      });
  const auto wrong = PolarNorm::analytic(
      custom, [](const Vec2& v) { return oracle::ellipse_polar(1, 2, v.x(), v.y()); },
      [](const Vec2& v) {
        const double h = oracle::ellipse_polar(1, 2, v.x(), v.y());
        return Vec2(v.x() / h, 4 * v.y() / h);
      });
  const auto r = identity_residuals(custom, wrong, 100);
  EXPECT_GT(r.unit_gauge, 0.1);
  EXPECT_EQ(r.samples, 100);
}
