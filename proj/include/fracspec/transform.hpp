// Discrete Fourier transform pair, trigonometric interpolation, spectral
// projection and fractional Sobolev seminorms on the torus.
//
//   forward:  c_k = ((2*pi)^d / N) * sum_j v_j exp(-i k.x_j)
//   inverse:  v_j = (2*pi)^-d * sum_k c_k exp(i k.x_j)
//
// With these scalings the coefficient of exp(i k.x) is (2*pi)^d, matching
// the continuous coefficients v^_k = (v, exp(i k.x)) of a trig polynomial.
#pragma once

#include <functional>
#include <span>

#include "fracspec/grid.hpp"

namespace fracspec {

ModeField forward_transform(const GridField& field);
GridField inverse_transform(const ModeField& modes);

/// (V, W)_n = ((2*pi)^d / N) * sum_j v_j conj(w_j)
Complex discrete_inner(const GridField& v, const GridField& w);

using PointFunction = std::function<Complex(std::span<const double> x)>;

/// Nodal values v(x_j).
GridField sample(const GridSpec& spec, const PointFunction& fn);

/// Coefficients of the trigonometric interpolant I_n v.
ModeField interpolate(const GridSpec& spec, const PointFunction& fn);

/// L2 projection P_n: copies src(k) for every k in Z_n^d.
ModeField project(const CoefficientSource& src, const GridSpec& spec);

/// Seminorm |v|_mu = ((2*pi)^-d sum |k|^{2 mu} |c_k|^2)^{1/2}.
/// The k = 0 term is kept only for mu == 0 (then this is the L2 norm).
/// mu < 0 requires a mean-free field.
double sobolev_norm(const ModeField& modes, double mu);

/// Neumaier-compensated running sum; deterministic for a fixed input order.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Same weighting over an explicit list of (|k|^2, coefficient) pairs;
/// used to evaluate norms of truncated continuous series.
class SeminormAccumulator {
 public:
  explicit SeminormAccumulator(double mu) : mu_(mu) {}
  void add(std::int64_t squared_wavenumber, Complex coeff);
  /// ((2*pi)^-d * weighted sum)^{1/2}
  double norm(int dim) const;
  double weighted_sum() const { return sum_.value(); }

 private:
  double mu_;
  CompensatedSum sum_;
};

}  // namespace fracspec
