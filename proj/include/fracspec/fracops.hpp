// Fractional powers of the periodic Laplacian as diagonal Fourier
// multipliers, and the fractional Poisson solver.
#pragma once

#include <utility>

#include "fracspec/grid.hpp"

namespace fracspec {

/// Order s of (-Delta)^s; any finite real, negative for inverse powers.
class FracOrder {
 public:
  explicit FracOrder(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// |k|^{2s} for |k|^2 = squared_wavenumber > 0, evaluated as (|k|^2)^s.
double laplacian_symbol(std::int64_t squared_wavenumber, double s);

/// Output coefficient is |k|^{2s} c_k for k != 0 and exactly 0 at k = 0.
/// Negative s requires a mean-free input.
ModeField apply_power(const ModeField& modes, FracOrder s);

/// Solves (-Delta)^s u = f for mean-free f, 0 < s <= 1; u has zero mean.
ModeField solve_poisson(const ModeField& forcing, FracOrder s);

/// Returns (|(-Delta)^s c|_{r-2s}, |c|_r); both agree for mean-free c.
std::pair<double, double> isometry_check(const ModeField& modes, double r, FracOrder s);

}  // namespace fracspec
