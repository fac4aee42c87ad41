#include <gtest/gtest.h>

#include <anisoperim/error.hpp>
#include <anisoperim/manufactured.hpp>
#include <anisoperim/radial.hpp>

#include "support/oracles.hpp"

using namespace anisoperim;
using Kind = RadialProfile::Kind;

namespace {

RadialProfile constant_fstar(double c, double s_max) {
  return RadialProfile::from_table(Kind::DecreasingRearrangement, {0.0, s_max}, {c, c});
}

// f*(s) = 2 - s / S on [0, S]
RadialProfile linear_fstar(double S) {
  return RadialProfile::from_table(Kind::DecreasingRearrangement, {0.0, S}, {2.0, 1.0});
}

double linear_w(double kappa, double R, double S, double r) {
  const auto root_g = [&](double rho) {
    const double a = kappa * rho * rho;
    return std::sqrt(std::max(0.0, 2 * a - a * a / (2 * S)));
  };
  return oracle::simpson(root_g, r, R, 20000) / std::sqrt(kappa);
}

double max_w_error(const RadialSolution& sol, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < sol.w.breakpoints.size(); ++i)
    e = std::max(e, std::abs(sol.w.values[i] - exact(sol.w.breakpoints[i])));
  return e;
}

}  // namespace

TEST(SolveRadial, UnitDataGivesParabola) {
  for (double kappa : {oracle::pi, oracle::pi / 2, 3.5}) {
    const double R = 1.3;
    const auto sol = solve_radial(constant_fstar(1.0, kappa * R * R), kappa, R, 1024);
    EXPECT_LE(max_w_error(sol, [&](double r) { return oracle::constant_data_w(1.0, R, r); }), 1e-8);
    EXPECT_NEAR(sol.w(R), 0.0, 1e-12);
    EXPECT_LE(det_residual(sol), 1e-6);
    ASSERT_EQ(sol.w.node_derivative.size(), sol.w.breakpoints.size());
    for (std::size_t i = 0; i < sol.w.breakpoints.size(); ++i)
      EXPECT_NEAR(sol.w.node_derivative[i], -sol.w.breakpoints[i], 1e-9);
  }
}

TEST(SolveRadial, ConstantDataScalesWithSquareRoot) {
  const double kappa = 2.0, R = 1.0;
  const auto sol = solve_radial(constant_fstar(9.0, kappa), kappa, R, 256);
  EXPECT_LE(max_w_error(sol, [&](double r) { return oracle::constant_data_w(9.0, R, r); }), 1e-8);
}

TEST(SolveRadial, DataVanishesBeyondSupport) {
  // f* = 1 on [0, kappa/4], 0 beyond: G is kappa rho^2 up to rho = 1/2, then kappa/4
  const double kappa = oracle::pi, R = 1.0;
  const auto sol = solve_radial(constant_fstar(1.0, kappa / 4), kappa, R, 1024);
  const auto exact = [](double r) {
    if (r >= 0.5) return 0.5 * (1.0 - r);
    return 0.5 * 0.5 + 0.5 * (0.25 - r * r);
  };
  EXPECT_LE(max_w_error(sol, exact), 1e-8);
}

TEST(SolveRadial, ConvergesAtLeastQuadratically) {
  const double kappa = oracle::pi, R = 1.0, S = kappa;
  const auto exact = [&](double r) { return linear_w(kappa, R, S, r); };
  const double e1 = max_w_error(solve_radial(linear_fstar(S), kappa, R, 64), exact);
  const double e2 = max_w_error(solve_radial(linear_fstar(S), kappa, R, 128), exact);
  EXPECT_LT(e1, 1e-5);
  EXPECT_GT(e1 / std::max(e2, 1e-15), 3.5);
}

TEST(SolveRadial, MonotoneInData) {
  const double kappa = 1.5, R = 0.8;
  const auto small = solve_radial(linear_fstar(kappa * R * R), kappa, R, 256);
  const auto big = solve_radial(constant_fstar(2.0, kappa * R * R), kappa, R, 256);
  for (double r = 0; r <= R; r += 0.01) EXPECT_LE(small.w(r), big.w(r) + 1e-14);
}

TEST(SolveRadial, ConcaveForDecreasingData) {
  const auto sol = solve_radial(linear_fstar(2.0), 2.0, 1.0, 512);
  const auto& s = sol.w.breakpoints;
  const auto& v = sol.w.values;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double left = (v[i] - v[i - 1]) / (s[i] - s[i - 1]);
    const double right = (v[i + 1] - v[i]) / (s[i + 1] - s[i]);
    EXPECT_LE(right, left + 1e-9);
  }
}

TEST(SolveRadial, Errors) {
  try {
    solve_radial(constant_fstar(1.0, 1.0), 1.0, 1.0, 63);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
  auto neg = constant_fstar(1.0, 1.0);
  neg.values = {-1.0, -1.0};
  try {
    solve_radial(neg, 1.0, 1.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidData);
  }
}

TEST(VSharp, ClosedFormAndConsistency) {
  const double kappa = oracle::pi / 2, R = 1.2;
  const auto sol = solve_radial(constant_fstar(1.0, kappa * R * R), kappa, R, 1024);
  for (double s = 0; s <= 2 * kappa * R; s += 0.05)
    EXPECT_NEAR(v_sharp(sol, s), oracle::constant_data_v(kappa, R, s), 1e-8);
  EXPECT_NEAR(v_sharp(sol, 2 * kappa * R), 0.0, 1e-14);
  EXPECT_NEAR(v_sharp(sol, 0.0), sol.w.values.front(), 1e-12);
  try {
    v_sharp(sol, 2 * kappa * R * 1.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW(v_sharp(sol, -0.1), Error);

  const auto lin = solve_radial(linear_fstar(kappa), kappa, R, 512);
  for (std::size_t i = 0; i < lin.w.breakpoints.size(); ++i) {
    const double r = lin.w.breakpoints[i];
    const double w = lin.w.values[i];
    EXPECT_LE(std::abs(v_sharp(lin, 2 * kappa * r) - w), 1e-8 * std::max(w, 1e-300) + 1e-15);
  }
}

TEST(Talenti, RadialFieldReproducesItself) {
  for (const Norm& n : suite_norms()) {
    const auto polar = PolarNorm::analytic(n);
    const auto f = wulff_power_field(polar, 1.0, Vec2::Zero(), 2.0, 1.0 / 256);
    const auto r = talenti_compare(f, n, polar);
    EXPECT_LE(r.max_abs_gap, 0.01 * r.max_value) << n.describe();
    EXPECT_TRUE(r.to_report(0.01).all_pass());
    EXPECT_FALSE(r.rows.empty());
  }
}

TEST(Talenti, SignOnNonRadialFields) {
  const auto ep = PolarNorm::analytic(Norm::euclidean());
  const auto pent = manufactured_suite(Norm::euclidean(), ep)[7].build(1.0 / 256);
  const auto a = talenti_compare(pent, Norm::euclidean(), ep);
  EXPECT_GE(a.worst_margin, -0.01 * a.max_value);

  const Norm e = Norm::ellipse(2, 1);
  const auto pe = PolarNorm::analytic(e);
  const auto rect = manufactured_suite(e, pe)[8].build(1.0 / 256);
  const auto b = talenti_compare(rect, e, pe);
  EXPECT_GE(b.worst_margin, -0.01 * b.max_value);
  for (const auto& row : b.rows) EXPECT_NEAR(row.margin, row.v_sharp - row.u_sharp, 1e-15);
}

TEST(Talenti, RejectsDegenerateRightHandSide) {
  const auto f = distance_field_ellipse(0.5, 0.3, 0.3, 1.0 / 64);
  try {
    talenti_compare(f, Norm::euclidean(), PolarNorm::analytic(Norm::euclidean()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ManufacturedSolution);
  }
}
