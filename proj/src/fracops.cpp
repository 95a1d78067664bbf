#include "fracspec/fracops.hpp"

#include <cmath>

#include "fracspec/transform.hpp"

namespace fracspec {

FracOrder::FracOrder(double s) : s_(s) {
  if (!std::isfinite(s)) {
    throw PreconditionError("fractional order must be finite");
  }
}

double laplacian_symbol(std::int64_t squared_wavenumber, double s) {
  if (squared_wavenumber == 1 || s == 0.0) {
    return 1.0;
  }
  return std::pow(static_cast<double>(squared_wavenumber), s);
}

ModeField apply_power(const ModeField& modes, FracOrder s) {
  if (s.value() < 0.0 && !modes.is_mean_free()) {
    throw PreconditionError("apply_power: negative order needs a mean-free field");
  }
  const auto k2 = modes.spec().squared_wavenumbers();
  std::vector<Complex> out(k2.size());
  for (std::size_t p = 0; p < k2.size(); ++p) {
    out[p] = k2[p] == 0 ? Complex{} : laplacian_symbol(k2[p], s.value()) * modes[p];
  }
  return ModeField(modes.spec(), std::move(out));
}

ModeField solve_poisson(const ModeField& forcing, FracOrder s) {
  if (!(s.value() > 0.0 && s.value() <= 1.0)) {
    throw PreconditionError("solve_poisson: order must satisfy 0 < s <= 1");
  }
  if (!forcing.is_mean_free()) {
    throw PreconditionError("solve_poisson: forcing must have vanishing mean");
  }
  return apply_power(forcing, FracOrder(-s.value()));
}

std::pair<double, double> isometry_check(const ModeField& modes, double r, FracOrder s) {
  if (!modes.is_mean_free()) {
    throw PreconditionError("isometry_check: field must be mean-free");
  }
  const ModeField image = apply_power(modes, s);
  return {sobolev_norm(image, r - 2.0 * s.value()), sobolev_norm(modes, r)};
}

}  // namespace fracspec
