#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fracspec/bench.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/transform.hpp"
#include "support.hpp"

using namespace fracspec;
using namespace fracspec::bench;

TEST_CASE("hat coefficients") {
  const auto w = hat_coeffs();
  CHECK(w(make_wave({1})) == Complex(-4.0));
  CHECK(w(make_wave({-1})) == Complex(-4.0));
  CHECK(w(make_wave({2})) == Complex(0.0));
  CHECK(w(make_wave({0})) == Complex(kPi * kPi));
  CHECK(w(make_wave({3})).real() == doctest::Approx(-4.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("hat coefficients agree with quadrature of the hat") {
  // w(x) = x on [0, pi], 2 pi - x on [pi, 2 pi]; w^_k = int w exp(-i k x) dx.
  const int m = 1 << 16;
  for (int k : {0, 1, 2, 3, 5}) {
    Complex acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double x = (j + 0.5) * kTwoPi / m;
      const double w = x <= kPi ? x : kTwoPi - x;
      acc += w * std::polar(1.0, -k * x);
    }
    acc *= kTwoPi / m;
    CHECK(std::abs(acc - hat_coeffs()(make_wave({k}))) <= 1e-6);
  }
}

TEST_CASE("product solution and forcing") {
  const auto u2 = product_solution(2);
  CHECK(u2(make_wave({1, 1})) == Complex(16.0));
  CHECK(u2(make_wave({1, 2})) == Complex(0.0));
  CHECK(u2(make_wave({0, 1})).real() == doctest::Approx(-4.0 * kPi * kPi));
  CHECK(product_solution(1)(make_wave({0})) == Complex(0.0));

  const auto f = forcing(product_solution(1), 0.5);
  CHECK(f(make_wave({1})).real() == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(f(make_wave({3})).real() == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
  CHECK(f(make_wave({0})) == Complex(0.0));
  CHECK(f.decay_exponent().value() == doctest::Approx(1.0));
}

TEST_CASE("least-squares slope drops the coarsest point") {
  std::vector<ConvergenceEntry> e;
  e.push_back({8.0, 123.0, 0.0});
  for (double h : {16.0, 32.0, 64.0, 128.0}) {
    e.push_back({h, 3.0 * std::pow(h, -1.25), 0.0});
  }
  CHECK(fit_slope(e) == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope({{1, 1, 0}, {2, 1, 0}}), PreconditionError);
}

TEST_CASE("Poisson benchmark convergence in 1d") {
  const std::vector<int> ns{16, 32, 64, 128, 256, 512};
  for (double s : {0.25, 0.4}) {
    const auto r = poisson_convergence(1, s, ns, 8192);
    CHECK(std::abs(r.slope + (1.5 - s)) <= 0.15);
    CHECK(r.slope_ok());
    CHECK(r.monotone());
    CHECK(r.identity_defect <= 1e-13);
    CHECK(r.tail_fraction < 1e-2);
    for (const auto& e : r.entries) {
      CHECK(e.error <= e.bound * (1 + 1e-10));
    }
    CHECK(r.verdict().rfind("PASS", 0) == 0);
  }
}

TEST_CASE("Poisson benchmark convergence in 2d") {
  const auto r = poisson_convergence(2, 0.25, {8, 16, 32, 64}, 512);
  CHECK(r.monotone());
  CHECK(r.identity_defect <= 1e-13);
  CHECK(std::abs(r.slope + 1.25) <= 0.15);
  for (const auto& e : r.entries) {
    CHECK(e.error <= e.bound * (1 + 1e-10));
  }
}

TEST_CASE("Poisson benchmark preconditions") {
  CHECK_THROWS_AS(poisson_convergence(1, 0.25, {16, 32, 64}, 8192), PreconditionError);
  CHECK_THROWS_AS(poisson_convergence(1, 0.25, {16, 32, 64, 128}, 512), PreconditionError);
}

TEST_CASE("solver output at n = 16, s = 1/2 has kinks at the hat corners") {
  const GridSpec spec({16});
  const ModeField u = solve_poisson(project(forcing(product_solution(1), 0.5), spec), FracOrder(0.5));
  const GridField v = inverse_transform(u);
  const auto second = [&](int j) {
    return v[static_cast<std::size_t>((j + 1) % 16)].real() - 2 * v[static_cast<std::size_t>(j)].real() +
           v[static_cast<std::size_t>((j + 15) % 16)].real();
  };
  double max_d2 = -1e300;
  double min_d2 = 1e300;
  int argmax = -1;
  int argmin = -1;
  for (int j = 0; j < 16; ++j) {
    if (second(j) > max_d2) {
      max_d2 = second(j);
      argmax = j;
    }
    if (second(j) < min_d2) {
      min_d2 = second(j);
      argmin = j;
    }
  }
  CHECK(argmax == 0);
  CHECK(argmin == 8);
  CHECK(max_d2 > 0.0);
  CHECK(min_d2 < 0.0);
}

TEST_CASE("linear time stepping converges at first order") {
  const std::vector<double> taus{0.05, 0.025, 0.0125, 0.00625, 0.003125};
  const auto r = heat_convergence(0.5, 0.5, taus, 1.0, make_wave({2, 0}));
  CHECK(r.identity_defect <= 1e-12);
  CHECK(r.monotone());
  CHECK(std::abs(r.slope - 1.0) <= 0.15);
  for (std::size_t i = 1; i < r.entries.size(); ++i) {
    const double ratio = r.entries[i - 1].error / r.entries[i].error;
    CHECK(ratio >= 2.0 * 0.85);
    CHECK(ratio <= 2.0 * 1.15);
  }
  CHECK_THROWS_AS(heat_convergence(0.5, 0.5, {0.3, 0.1, 0.05, 0.01}, 1.0, make_wave({1, 0})), PreconditionError);
  CHECK_THROWS_AS(heat_convergence(0.5, 0.5, taus, 1.0, make_wave({0, 0})), PreconditionError);
}

TEST_CASE("report CSV and verdict") {
  ConvergenceReport r;
  r.label = "demo";
  r.entries = {{1.0, 0.5, 0.6}, {2.0, 0.25, 0.3}};
  r.slope = -1.02;
  r.expected_slope = -1.0;
  std::ostringstream os;
  r.write_csv(os);
  CHECK(os.str() == "h,error,bound\n1,0.5,0.59999999999999998\n2,0.25,0.29999999999999999\n");
  CHECK(r.verdict() == "PASS demo: slope -1.0200 expected -1.0000 +/- 0.1500");
  r.entries[1].error = 0.7;
  CHECK(r.verdict().rfind("FAIL", 0) == 0);
}
