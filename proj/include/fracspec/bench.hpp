// Manufactured solutions and convergence-rate measurement.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracspec/grid.hpp"

namespace fracspec::bench {

/// Coefficients of the hat w(x) = x on [0, pi], 2 pi - x on [pi, 2 pi]:
/// w^_0 = pi^2, w^_k = -4/k^2 for odd k, 0 for even k != 0.
CoefficientSource hat_coeffs();

/// u(x) = prod_i w(x_i) - pi^{2d}/(2 pi)^d; u^_k = prod_i w^_{k_i}, u^_0 = 0.
CoefficientSource product_solution(int dim);

/// f = (-Delta)^s u: k -> |k|^{2s} src(k), 0 at k = 0.
CoefficientSource forcing(const CoefficientSource& src, double s);

struct ConvergenceEntry {
  double h = 0.0;      ///< resolution parameter: n for spatial, tau for temporal studies
  double error = 0.0;
  double bound = 0.0;  ///< reference bound, 0 when not applicable
};

struct ConvergenceReport {
  std::string label;
  std::string norm;  ///< description of the error norm
  int n_ref = 0;     ///< reference truncation (0 if not used)
  std::vector<ConvergenceEntry> entries;
  double slope = 0.0;
  double expected_slope = 0.0;
  double slope_tolerance = 0.15;
  /// Largest deviation of an auxiliary exact identity (solver vs truncation,
  /// scheme vs scalar recursion).
  double identity_defect = 0.0;
  /// Analytic bound on the squared seminorm of the series beyond n_ref,
  /// divided by the smallest measured squared error.
  double tail_fraction = 0.0;

  bool slope_ok() const;
  bool monotone() const;
  void write_csv(std::ostream& os) const;
  std::string verdict() const;
};

/// Least-squares slope of log(error) against log(h), dropping the first
/// (coarsest) entry.
double fit_slope(const std::vector<ConvergenceEntry>& entries);

/// For each n: u_n = solve_poisson(P_n f, s) on a d-cube grid and the error
/// |u - u_n|_s, with the exact series truncated at n_ref per axis. The bound
/// column holds |f - P_n f|_{-s} over the same range.
ConvergenceReport poisson_convergence(int dim, double s, const std::vector<int>& n_list, int n_ref);

/// Linear problem d_t u + (-Delta)^s u + eps^{-2} u = 0 from a single mode on
/// a 2-D grid of extent n: relative error of the computed mode at time T
/// against exp(-T (|k|^{2s} + eps^{-2})), for each tau. eps^{-2} follows
/// from tilde_eps through phasefield::eps_scaling.
ConvergenceReport heat_convergence(double s, double tilde_eps, const std::vector<double>& tau_list,
                                   double final_time, const WaveIndex& mode, int n = 16);

}  // namespace fracspec::bench
