// Shared helpers for the test binaries: random fields and brute-force
// reference computations written independently of the library internals.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "fracspec/grid.hpp"

namespace testing {

using fracspec::Complex;
using fracspec::GridField;
using fracspec::GridSpec;
using fracspec::ModeField;

inline std::vector<Complex> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) {
    x = Complex(u(rng), u(rng));
  }
  return v;
}

inline GridField random_grid(const GridSpec& spec, std::mt19937_64& rng) {
  return GridField(spec, random_values(spec.size(), rng));
}

inline GridField random_real_grid(const GridSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(spec.size());
  for (auto& x : v) {
    x = u(rng);
  }
  return GridField(spec, std::move(v));
}

inline ModeField random_mean_free(const GridSpec& spec, std::mt19937_64& rng) {
  auto c = random_values(spec.size(), rng);
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (spec.wave_index(p).is_zero()) {
      c[p] = 0.0;
    }
  }
  return ModeField(spec, std::move(c));
}

/// Single Fourier mode with coefficient (2 pi)^d at k, i.e. exp(i k.x).
inline ModeField plane_wave(const GridSpec& spec, const fracspec::WaveIndex& k, Complex scale = 1.0) {
  std::vector<Complex> c(spec.size());
  c[spec.mode_position(k)] = scale * std::pow(fracspec::kTwoPi, spec.dim());
  return ModeField(spec, std::move(c));
}

/// Direct O(N^2) evaluation of c_k = ((2 pi)^d / N) sum_j v_j exp(-i k.x_j).
inline std::vector<Complex> naive_forward(const GridField& v) {
  const GridSpec& spec = v.spec();
  const double scale = std::pow(fracspec::kTwoPi, spec.dim()) / static_cast<double>(spec.size());
  std::vector<Complex> out(spec.size());
  for (std::size_t p = 0; p < spec.size(); ++p) {
    const auto k = spec.wave_index(p);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const auto x = spec.node(j);
      double phase = 0.0;
      for (int a = 0; a < spec.dim(); ++a) {
        phase += k[a] * x[static_cast<std::size_t>(a)];
      }
      acc += v[j] * std::polar(1.0, -phase);
    }
    out[p] = scale * acc;
  }
  return out;
}

template <typename Range>
double max_abs_diff(const Range& a, const Range& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

template <typename Range>
double max_abs(const Range& a) {
  double m = 0.0;
  for (const auto& x : a) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace testing
