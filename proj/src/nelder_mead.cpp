#include "fracspec/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace fracspec {
namespace {

struct Vertex {
  Point2 x;
  double f;
};

Point2 clamp_box(Point2 p) {
  for (auto& v : p) {
    v = std::clamp(v, 0.0, 1.0);
  }
  return p;
}

// c + t (a - c)
Point2 along(const Point2& c, const Point2& a, double t) {
  return {c[0] + t * (a[0] - c[0]), c[1] + t * (a[1] - c[1])};
}

}  // namespace

NelderMeadResult nelder_mead_box(const std::function<double(const Point2&)>& f, Point2 start,
                                 const NelderMeadOptions& options) {
  NelderMeadResult result;
  auto eval = [&](const Point2& p) {
    ++result.evaluations;
    const double v = f(p);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  start = clamp_box(start);
  std::array<Vertex, 3> simplex;
  simplex[0] = {start, eval(start)};
  for (int axis = 0; axis < 2; ++axis) {
    Point2 p = start;
    p[axis] += (p[axis] + options.initial_step <= 1.0) ? options.initial_step
                                                       : -options.initial_step;
    p = clamp_box(p);
    simplex[static_cast<std::size_t>(axis) + 1] = {p, eval(p)};
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    Vertex& best = simplex[0];
    Vertex& worst = simplex[2];

    double spread = 0.0;
    for (const auto& v : simplex) {
      spread = std::max({spread, std::abs(v.x[0] - best.x[0]), std::abs(v.x[1] - best.x[1])});
    }
    if (spread < options.simplex_tolerance || result.iterations >= options.max_iterations) {
      break;
    }
    ++result.iterations;

    const Point2 centroid = along(best.x, simplex[1].x, 0.5);
    const Point2 xr = clamp_box(along(centroid, worst.x, -1.0));
    const double fr = eval(xr);

    if (fr < best.f) {
      const Point2 xe = clamp_box(along(centroid, worst.x, -2.0));
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[1].f) {
      worst = {xr, fr};
      continue;
    }
    const bool outside = fr < worst.f;
    const Point2 xc = outside ? along(centroid, xr, 0.5) : along(centroid, worst.x, 0.5);
    const double fc = eval(xc);
    if (outside ? fc <= fr : fc < worst.f) {
      worst = {xc, fc};
      continue;
    }
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      simplex[i].x = along(best.x, simplex[i].x, 0.5);
      simplex[i].f = eval(simplex[i].x);
    }
  }

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  result.argmin = simplex[0].x;
  result.value = simplex[0].f;
  return result;
}

}  // namespace fracspec
