// Uniform grids on the periodic torus [0, 2*pi)^d and the two field
// representations built on them.
//
// Storage conventions (part of the public contract, snapshot files rely on
// them):
//   * GridField values are row-major over the node index j, last axis
//     fastest, j_i in [0, n_i).
//   * ModeField coefficients are row-major over the shifted wave index
//     p_i = k_i + n_i/2, i.e. k_i runs from -n_i/2 to n_i/2 - 1.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Violated precondition or invalid configuration.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDim = 3;

/// Integer wave vector k with the dimension it lives in.
struct WaveIndex {
  std::array<int, kMaxDim> k{};
  int dim = 1;

  int operator[](int axis) const { return k[static_cast<std::size_t>(axis)]; }
  std::int64_t squared_norm() const;
  double norm() const;
  bool is_zero() const;
  bool operator==(const WaveIndex&) const = default;
};

WaveIndex make_wave(std::initializer_list<int> components);

class GridSpec {
 public:
  /// Each extent must be even and >= 4; 1 <= d <= 3.
  explicit GridSpec(std::vector<int> extents);
  static GridSpec cube(int dim, int n);

  int dim() const { return static_cast<int>(extents_.size()); }
  int extent(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  std::span<const int> extents() const { return extents_; }
  int max_extent() const;
  std::size_t size() const { return size_; }

  /// (2*pi)^d
  double torus_volume() const;

  double node_coordinate(int axis, int j) const;
  std::array<int, kMaxDim> node_index(std::size_t flat) const;
  std::array<double, kMaxDim> node(std::size_t flat) const;

  WaveIndex wave_index(std::size_t position) const;
  bool contains(const WaveIndex& k) const;
  /// Canonical position of k; k must satisfy contains(k).
  std::size_t mode_position(const WaveIndex& k) const;

  /// |k|^2 for every canonical mode position.
  std::vector<std::int64_t> squared_wavenumbers() const;
  /// max_{k in Z_n^d} |k|
  double max_wavenumber() const;

  std::string describe() const;
  bool operator==(const GridSpec&) const = default;

 private:
  std::vector<int> extents_;
  std::size_t size_ = 0;
};

class GridField {
 public:
  GridField(GridSpec spec, std::vector<Complex> values);
  static GridField zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t j) const { return values_[j]; }
  /// Largest |Im v_j|.
  double max_imag() const;

 private:
  GridSpec spec_;
  std::vector<Complex> values_;
};

class ModeField {
 public:
  ModeField(GridSpec spec, std::vector<Complex> coeffs);
  static ModeField zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  const Complex& operator[](std::size_t position) const { return coeffs_[position]; }
  const Complex& at(const WaveIndex& k) const;
  const Complex& mean_coefficient() const;

  /// |c_0| <= 1e-10 * max(1, max_k |c_k|)
  bool is_mean_free() const;

 private:
  GridSpec spec_;
  std::vector<Complex> coeffs_;
};

/// Closed-form Fourier coefficients k -> v^_k of a function on the torus.
class CoefficientSource {
 public:
  using Function = std::function<Complex(const WaveIndex&)>;

  CoefficientSource(int dim, Function fn, std::optional<double> decay_exponent = std::nullopt);

  int dim() const { return dim_; }
  Complex operator()(const WaveIndex& k) const { return fn_(k); }
  /// p such that |v^_k| = O(|k|^-p), when known.
  std::optional<double> decay_exponent() const { return decay_; }

 private:
  int dim_;
  Function fn_;
  std::optional<double> decay_;
};

}  // namespace fracspec
