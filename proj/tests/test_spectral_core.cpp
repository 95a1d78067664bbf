#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fracspec/bench.hpp"
#include "fracspec/snapshot.hpp"
#include "fracspec/transform.hpp"
#include "support.hpp"

using namespace fracspec;
using testing::max_abs;
using testing::max_abs_diff;

TEST_CASE("grid spec rejects unsupported extents") {
  CHECK_THROWS_AS(GridSpec({5}), PreconditionError);
  CHECK_THROWS_AS(GridSpec({2}), PreconditionError);
  CHECK_THROWS_AS(GridSpec(std::vector<int>{}), PreconditionError);
  CHECK_THROWS_AS(GridSpec({4, 4, 4, 4}), PreconditionError);
  CHECK_NOTHROW(GridSpec({4, 6, 8}));
}

TEST_CASE("nodes sit at 2 pi j / n") {
  const GridSpec spec({8, 4});
  CHECK(spec.node_coordinate(0, 3) == doctest::Approx(3 * kTwoPi / 8));
  const auto x = spec.node(1 * 4 + 3);
  CHECK(x[0] == doctest::Approx(kTwoPi / 8));
  CHECK(x[1] == doctest::Approx(3 * kTwoPi / 4));
  CHECK(spec.size() == 32);
  CHECK(spec.torus_volume() == doctest::Approx(kTwoPi * kTwoPi));
}

TEST_CASE("canonical mode order runs k from -n/2 to n/2-1, last axis fastest") {
  const GridSpec spec({4, 6});
  CHECK(spec.wave_index(0) == make_wave({-2, -3}));
  CHECK(spec.wave_index(1) == make_wave({-2, -2}));
  CHECK(spec.wave_index(6) == make_wave({-1, -3}));
  CHECK(spec.wave_index(2 * 6 + 3).is_zero());
  for (std::size_t p = 0; p < spec.size(); ++p) {
    CHECK(spec.mode_position(spec.wave_index(p)) == p);
  }
  CHECK_FALSE(spec.contains(make_wave({2, 0})));
  CHECK(spec.contains(make_wave({-2, 2})));
  const auto k2 = spec.squared_wavenumbers();
  for (std::size_t p = 0; p < spec.size(); ++p) {
    CHECK(k2[p] == spec.wave_index(p).squared_norm());
  }
  CHECK(spec.max_wavenumber() == doctest::Approx(std::sqrt(4.0 + 9.0)));
}

TEST_CASE("forward transform of simple fields") {
  SUBCASE("constant") {
    const GridSpec spec({4});
    const ModeField c = forward_transform(GridField(spec, std::vector<Complex>(4, 1.0)));
    for (std::size_t p = 0; p < 4; ++p) {
      const Complex expected = spec.wave_index(p).is_zero() ? kTwoPi : 0.0;
      CHECK(std::abs(c[p] - expected) < 1e-14);
    }
  }
  SUBCASE("exp(i x) on n = 8") {
    const GridSpec spec({8});
    const ModeField c = forward_transform(sample(spec, [](std::span<const double> x) {
      return std::polar(1.0, x[0]);
    }));
    for (std::size_t p = 0; p < 8; ++p) {
      const Complex expected = spec.wave_index(p) == make_wave({1}) ? kTwoPi : 0.0;
      CHECK(std::abs(c[p] - expected) < 1e-14);
    }
  }
}

TEST_CASE("forward transform agrees with direct summation") {
  std::mt19937_64 rng(11);
  for (const auto& extents : std::vector<std::vector<int>>{{4}, {10}, {16}, {4, 8}, {6, 6}, {4, 6, 8}}) {
    const GridSpec spec(extents);
    const GridField v = testing::random_grid(spec, rng);
    const auto oracle = testing::naive_forward(v);
    const ModeField c = forward_transform(v);
    CHECK(max_abs_diff(c.coeffs(), std::span<const Complex>(oracle)) <= 1e-12 * max_abs(oracle));
  }
}

TEST_CASE("inverse transform of simple coefficients") {
  SUBCASE("constant mode") {
    const GridSpec spec({6});
    std::vector<Complex> c(6);
    c[spec.mode_position(make_wave({0}))] = kTwoPi;
    const GridField v = inverse_transform(ModeField(spec, c));
    for (const auto& x : v.values()) {
      CHECK(std::abs(x - 1.0) < 1e-15);
    }
  }
  SUBCASE("single mode in 2d") {
    const GridSpec spec({8, 4});
    const GridField v = inverse_transform(testing::plane_wave(spec, make_wave({1, 0})));
    for (std::size_t j = 0; j < spec.size(); ++j) {
      CHECK(std::abs(v[j] - std::polar(1.0, spec.node(j)[0])) < 1e-14);
    }
  }
}

TEST_CASE("inversion and Parseval on random fields") {
  std::mt19937_64 rng(3);
  for (const auto& extents : std::vector<std::vector<int>>{{16}, {8, 12}, {4, 4, 6}}) {
    const GridSpec spec(extents);
    for (int trial = 0; trial < 10; ++trial) {
      const GridField v = testing::random_grid(spec, rng);
      const ModeField c = forward_transform(v);
      const GridField back = inverse_transform(c);
      CHECK(max_abs_diff(back.values(), v.values()) <= 1e-12 * max_abs(v.values()));

      const double lhs = discrete_inner(v, v).real();
      double rhs = 0.0;
      for (const auto& x : c.coeffs()) {
        rhs += std::norm(x);
      }
      rhs /= spec.torus_volume();
      CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
  }
}

TEST_CASE("discrete inner product of plane waves") {
  const GridSpec spec({6, 4});
  const auto wave = [&](const WaveIndex& k) { return inverse_transform(testing::plane_wave(spec, k)); };
  const GridField a = wave(make_wave({1, -1}));
  const GridField b = wave(make_wave({-3, 1}));
  CHECK(std::abs(discrete_inner(a, a) - spec.torus_volume()) < 1e-12);
  CHECK(std::abs(discrete_inner(a, b)) < 1e-12);
  CHECK(std::abs(discrete_inner(b, b).imag()) < 1e-14);
  CHECK_THROWS_AS(discrete_inner(a, GridField::zeros(GridSpec({6, 6}))), PreconditionError);
}

TEST_CASE("interpolation") {
  SUBCASE("reproduces trigonometric polynomials") {
    const GridSpec spec({8, 8});
    const ModeField c = interpolate(spec, [](std::span<const double> x) {
      return std::polar(1.0, 2 * x[0] - 3 * x[1]);
    });
    const ModeField expected = testing::plane_wave(spec, make_wave({2, -3}));
    CHECK(max_abs_diff(c.coeffs(), expected.coeffs()) < 1e-12);
  }
  SUBCASE("cosine splits into the two modes") {
    const GridSpec spec({8});
    const ModeField c = interpolate(spec, [](std::span<const double> x) { return std::cos(x[0]); });
    for (std::size_t p = 0; p < 8; ++p) {
      const int k = spec.wave_index(p)[0];
      const Complex expected = (k == 1 || k == -1) ? kPi : 0.0;
      CHECK(std::abs(c[p] - expected) < 1e-14);
    }
  }
  SUBCASE("the Nyquist mode aliases onto k = -n/2") {
    const int n = 8;
    const GridSpec spec({n});
    const ModeField c = interpolate(spec, [n](std::span<const double> x) {
      return std::polar(1.0, (n / 2) * x[0]);
    });
    CHECK(std::abs(c.at(make_wave({-n / 2})) - kTwoPi) < 1e-13);
    double rest = 0.0;
    for (std::size_t p = 1; p < spec.size(); ++p) {
      rest = std::max(rest, std::abs(c[p]));
    }
    CHECK(rest < 1e-13);
  }
}

TEST_CASE("projection copies coefficients") {
  const GridSpec spec({16});
  const ModeField hat = project(bench::hat_coeffs(), spec);
  for (std::size_t p = 0; p < spec.size(); ++p) {
    const int k = spec.wave_index(p)[0];
    const double expected = k == 0 ? kPi * kPi : (k % 2 == 0 ? 0.0 : -4.0 / (k * k));
    CHECK(hat[p] == Complex(expected));
  }

  const CoefficientSource mean_only(1, [](const WaveIndex& k) { return k.is_zero() ? Complex(2.0) : Complex(); });
  const ModeField m = project(mean_only, spec);
  CHECK(m.mean_coefficient() == Complex(2.0));
  CHECK(max_abs(m.coeffs()) == 2.0);

  std::mt19937_64 rng(5);
  const GridSpec spec2({6, 8});
  const ModeField c = forward_transform(testing::random_grid(spec2, rng));
  const CoefficientSource own(2, [&c](const WaveIndex& k) { return c.at(k); });
  const ModeField again = project(own, spec2);
  CHECK(max_abs_diff(again.coeffs(), c.coeffs()) == 0.0);
}

TEST_CASE("Sobolev seminorm of single modes") {
  const GridSpec spec({8, 8});
  const ModeField one = testing::plane_wave(spec, make_wave({1, 0}));
  for (double mu : {-1.0, -0.3, 0.0, 0.5, 1.7}) {
    CHECK(sobolev_norm(one, mu) == doctest::Approx(kTwoPi).epsilon(1e-14));
  }
  const ModeField two = testing::plane_wave(spec, make_wave({2, 0}));
  CHECK(sobolev_norm(two, 0.5) == doctest::Approx(std::sqrt(2.0) * kTwoPi).epsilon(1e-14));

  std::vector<Complex> c(spec.size());
  c[spec.mode_position(make_wave({0, 0}))] = 3.0;
  const ModeField mean(spec, c);
  CHECK(sobolev_norm(mean, 0.0) == doctest::Approx(3.0 / kTwoPi));
  CHECK(sobolev_norm(mean, 1.0) == 0.0);
  CHECK_THROWS_AS(sobolev_norm(mean, -0.5), PreconditionError);
}

TEST_CASE("Plancherel: real-space norm equals the mu = 0 seminorm") {
  std::mt19937_64 rng(8);
  const GridSpec spec({12, 6});
  const GridField v = testing::random_grid(spec, rng);
  const double real_space = discrete_inner(v, v).real();
  const double l2 = sobolev_norm(forward_transform(v), 0.0);
  CHECK(std::abs(real_space - l2 * l2) <= 1e-12 * real_space);
}

TEST_CASE("inverse estimate and embedding") {
  std::mt19937_64 rng(21);
  const std::vector<std::pair<double, double>> orders{{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.25}, {2.0, 0.5}, {1.5, 1.5}};
  for (const auto& extents : std::vector<std::vector<int>>{{16}, {8, 12}, {4, 6, 8}}) {
    const GridSpec spec(extents);
    for (int trial = 0; trial < 5; ++trial) {
      const ModeField c = testing::random_mean_free(spec, rng);
      for (const auto& [r, s] : orders) {
        const double hi = sobolev_norm(c, r);
        const double lo = sobolev_norm(c, s);
        CHECK(hi <= std::pow(spec.max_wavenumber(), r - s) * lo * (1 + 1e-12));
        if (spec.dim() == 1) {
          CHECK(hi <= std::pow(spec.extent(0) / 2.0, r - s) * lo * (1 + 1e-12));
        }
        CHECK(lo <= hi * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("inverse estimate with n/2 fails in 2d for corner modes") {
  // |k| at the corner (-n/2, -n/2) exceeds n/2, so only the Euclidean bound holds.
  const GridSpec spec({8, 8});
  const ModeField corner = testing::plane_wave(spec, make_wave({-4, -4}));
  CHECK(sobolev_norm(corner, 1.0) > 4.0 * sobolev_norm(corner, 0.0));
  CHECK(sobolev_norm(corner, 1.0) <= spec.max_wavenumber() * sobolev_norm(corner, 0.0) * (1 + 1e-14));
}

TEST_CASE("projection error of the hat decays at rate 3/2") {
  const int n_ref = 8192;
  const auto src = bench::hat_coeffs();
  std::vector<bench::ConvergenceEntry> entries;
  for (int n : {16, 32, 64, 128, 256, 512}) {
    SeminormAccumulator acc(0.0);
    for (int k = -n_ref / 2; k < n_ref / 2; ++k) {
      if (k < -n / 2 || k >= n / 2) {
        acc.add(static_cast<std::int64_t>(k) * k, src(make_wave({k})));
      }
    }
    entries.push_back({static_cast<double>(n), acc.norm(1), 0.0});
  }
  const double slope = bench::fit_slope(entries);
  CHECK(slope <= -1.4);
  CHECK(slope >= -1.6);
}

TEST_CASE("compensated sum recovers cancelled low-order bits") {
  CompensatedSum acc;
  acc.add(1.0);
  for (int i = 0; i < 10; ++i) {
    acc.add(1e-16);
  }
  acc.add(-1.0);
  CHECK(acc.value() == doctest::Approx(1e-15).epsilon(1e-12));
}

namespace {

template <typename Field>
Field round_trip(const Field& f, std::string* bytes = nullptr) {
  std::stringstream ss;
  write_snapshot(ss, f);
  if (bytes != nullptr) {
    *bytes = ss.str();
  }
  return std::get<Field>(read_snapshot(ss));
}

bool bit_equal(std::span<const Complex> a, std::span<const Complex> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

}  // namespace

TEST_CASE("snapshot round trips are bit-exact") {
  std::mt19937_64 rng(99);
  for (const auto& extents : std::vector<std::vector<int>>{{4}, {6, 8}, {4, 4, 6}}) {
    const GridSpec spec(extents);
    const GridField g = testing::random_grid(spec, rng);
    const ModeField m = forward_transform(g);
    const GridField g2 = round_trip(g);
    const ModeField m2 = round_trip(m);
    CHECK(g2.spec() == spec);
    CHECK(m2.spec() == spec);
    CHECK(bit_equal(g2.values(), g.values()));
    CHECK(bit_equal(m2.coeffs(), m.coeffs()));
  }
  std::vector<Complex> special{Complex(-0.0, 1e-310), Complex(std::nextafter(1.0, 2.0), -3.5),
                               Complex(1e300, -1e-300), Complex(0.1, 0.2)};
  const GridField g(GridSpec({4}), special);
  CHECK(bit_equal(round_trip(g).values(), g.values()));
}

TEST_CASE("snapshot layout: header line then little-endian re, im pairs") {
  std::vector<Complex> v(4);
  v[0] = Complex(1.0, -2.0);
  std::string bytes;
  round_trip(GridField(GridSpec({4}), v), &bytes);
  const std::string header = "FPFLD1 1 4 grid\n";
  REQUIRE(bytes.size() == header.size() + 4 * 16);
  CHECK(bytes.substr(0, header.size()) == header);
  // 1.0 = 0x3FF0000000000000, -2.0 = 0xC000000000000000
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(bytes[header.size() + i]); };
  CHECK(byte(7) == 0x3F);
  CHECK(byte(6) == 0xF0);
  CHECK(byte(0) == 0x00);
  CHECK(byte(15) == 0xC0);

  std::string mode_bytes;
  round_trip(ModeField(GridSpec({6, 4}), std::vector<Complex>(24)), &mode_bytes);
  CHECK(mode_bytes.rfind("FPFLD1 2 6 4 mode\n", 0) == 0);
}

TEST_CASE("malformed snapshots raise I/O errors") {
  std::string bytes;
  round_trip(GridField(GridSpec({4}), std::vector<Complex>(4, 1.0)), &bytes);
  const auto read = [](const std::string& s) {
    std::stringstream ss(s);
    return read_snapshot(ss);
  };
  CHECK_THROWS_AS(read(bytes.substr(0, bytes.size() - 1)), IoError);
  CHECK_THROWS_AS(read(bytes + "x"), IoError);
  CHECK_THROWS_AS(read("FPFLD2 1 4 grid\n"), IoError);
  CHECK_THROWS_AS(read("FPFLD1 1 5 grid\n"), IoError);
  CHECK_THROWS_AS(read("FPFLD1 1 4 nodal\n"), IoError);
  CHECK_THROWS_AS(read(""), IoError);
  CHECK_THROWS_AS(read_snapshot(std::filesystem::path("/nonexistent/file.fpfld")), IoError);
}
