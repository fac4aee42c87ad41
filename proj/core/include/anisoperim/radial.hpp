#pragma once

#include <vector>

#include "anisoperim/field.hpp"
#include "anisoperim/rearrange.hpp"
#include "anisoperim/report.hpp"

namespace anisoperim {

/// w(r) = kappa^-1/2 int_r^R sqrt(G(rho)) d rho,  G(rho) = int_0^{kappa rho^2} f*.
struct RadialSolution {
  RadialProfile w;      // radius-parametrized, with node_derivative = w'
  RadialProfile fstar;
  double kappa = 0.0;
  double R = 0.0;

  /// Quadrature panels in r (nodes plus kinks of G) and w at panel ends.
  std::vector<double> panels;
  std::vector<double> panel_w;
  /// v♦ at sigma = 2 kappa * panels, accumulated in the sigma variable.
  std::vector<double> panel_v;

  /// G(rho) as defined above.
  double inner(double rho) const;
};

RadialSolution solve_radial(const RadialProfile& fstar, double kappa, double R, int n);

/// v♦(s) = (2 kappa^3/2)^-1 int_s^{2 kappa R} sqrt(int_0^{sigma^2/4kappa} f*) d sigma.
double v_sharp(const RadialSolution& solution, double s);

/// max |[(w')^2]'/(2r) - f*(kappa r^2)| over interior nodes, by central differences.
double det_residual(const RadialSolution& solution);

struct TalentiRow {
  double s = 0.0;
  double u_sharp = 0.0;
  double v_sharp = 0.0;
  double margin = 0.0;  // v♦ - u♦
};

struct TalentiResult {
  std::vector<TalentiRow> rows;
  double worst_margin = 0.0;
  double worst_s = 0.0;
  double max_value = 0.0;
  double max_abs_gap = 0.0;  // max |v♦ - u♦|
  RadialSolution solution;

  /// min margin >= -tolerance * max u.
  Report to_report(double tolerance = 0.01) const;
};

struct TalentiOptions {
  int n_levels = 64;
  int fstar_nodes = 2048;
  int quadrature_nodes = 1024;
  int uniform_samples = 256;
  /// Largest weight fraction of E_u where f <= 0 before the input is rejected.
  double nonpositive_fraction = 0.01;
};

TalentiResult talenti_compare(const ScalarField& field, const Norm& norm, const PolarNorm& polar,
                              const TalentiOptions& options = {});

}  // namespace anisoperim
