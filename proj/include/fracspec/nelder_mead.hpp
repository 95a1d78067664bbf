// Nelder-Mead downhill simplex on the unit box [0,1]^2 with projection of
// trial points onto the box.
#pragma once

#include <array>
#include <functional>

namespace fracspec {

using Point2 = std::array<double, 2>;

struct NelderMeadOptions {
  int max_iterations = 200;
  /// Stop once every vertex is within this distance (max-norm) of the best.
  double simplex_tolerance = 1e-6;
  /// Edge length of the initial simplex.
  double initial_step = 1.0 / 7.0;
};

struct NelderMeadResult {
  Point2 argmin{};
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

/// Never returns a value larger than f(start).
NelderMeadResult nelder_mead_box(const std::function<double(const Point2&)>& f, Point2 start,
                                 const NelderMeadOptions& options = {});

}  // namespace fracspec
