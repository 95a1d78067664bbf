#include "fracspec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracspec {

std::int64_t WaveIndex::squared_norm() const {
  std::int64_t acc = 0;
  for (int i = 0; i < dim; ++i) {
    acc += static_cast<std::int64_t>(k[i]) * k[i];
  }
  return acc;
}

double WaveIndex::norm() const { return std::sqrt(static_cast<double>(squared_norm())); }

bool WaveIndex::is_zero() const { return squared_norm() == 0; }

WaveIndex make_wave(std::initializer_list<int> components) {
  if (components.size() == 0 || components.size() > kMaxDim) {
    throw PreconditionError("wave index must have 1 to 3 components");
  }
  WaveIndex w;
  w.dim = static_cast<int>(components.size());
  std::copy(components.begin(), components.end(), w.k.begin());
  return w;
}

GridSpec::GridSpec(std::vector<int> extents) : extents_(std::move(extents)) {
  if (extents_.empty() || extents_.size() > kMaxDim) {
    throw PreconditionError("grid dimension must be 1, 2 or 3");
  }
  size_ = 1;
  for (int n : extents_) {
    if (n < 4 || n % 2 != 0) {
      throw PreconditionError("grid extent " + std::to_string(n) + " must be even and >= 4");
    }
    size_ *= static_cast<std::size_t>(n);
  }
}

GridSpec GridSpec::cube(int dim, int n) {
  if (dim < 1 || dim > kMaxDim) {
    throw PreconditionError("grid dimension must be 1, 2 or 3");
  }
  return GridSpec(std::vector<int>(static_cast<std::size_t>(dim), n));
}

int GridSpec::max_extent() const { return *std::max_element(extents_.begin(), extents_.end()); }

double GridSpec::torus_volume() const { return std::pow(kTwoPi, dim()); }

double GridSpec::node_coordinate(int axis, int j) const { return kTwoPi * j / extent(axis); }

std::array<int, kMaxDim> GridSpec::node_index(std::size_t flat) const {
  std::array<int, kMaxDim> j{};
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const auto n = static_cast<std::size_t>(extent(axis));
    j[axis] = static_cast<int>(flat % n);
    flat /= n;
  }
  return j;
}

std::array<double, kMaxDim> GridSpec::node(std::size_t flat) const {
  const auto j = node_index(flat);
  std::array<double, kMaxDim> x{};
  for (int axis = 0; axis < dim(); ++axis) {
    x[axis] = node_coordinate(axis, j[axis]);
  }
  return x;
}

WaveIndex GridSpec::wave_index(std::size_t position) const {
  WaveIndex w;
  w.dim = dim();
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const auto n = static_cast<std::size_t>(extent(axis));
    w.k[axis] = static_cast<int>(position % n) - extent(axis) / 2;
    position /= n;
  }
  return w;
}

bool GridSpec::contains(const WaveIndex& k) const {
  if (k.dim != dim()) {
    return false;
  }
  for (int axis = 0; axis < dim(); ++axis) {
    const int half = extent(axis) / 2;
    if (k[axis] < -half || k[axis] > half - 1) {
      return false;
    }
  }
  return true;
}

std::size_t GridSpec::mode_position(const WaveIndex& k) const {
  if (!contains(k)) {
    throw PreconditionError("wave index outside Z_n^d");
  }
  std::size_t pos = 0;
  for (int axis = 0; axis < dim(); ++axis) {
    pos = pos * static_cast<std::size_t>(extent(axis)) +
          static_cast<std::size_t>(k[axis] + extent(axis) / 2);
  }
  return pos;
}

std::vector<std::int64_t> GridSpec::squared_wavenumbers() const {
  std::vector<std::int64_t> out(size_);
  // Separable: |k|^2 = sum of per-axis squares, built axis by axis.
  std::array<std::vector<std::int64_t>, kMaxDim> axis_sq;
  for (int axis = 0; axis < kMaxDim; ++axis) {
    if (axis < dim()) {
      const int n = extent(axis);
      axis_sq[axis].resize(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) {
        const std::int64_t k = p - n / 2;
        axis_sq[axis][static_cast<std::size_t>(p)] = k * k;
      }
    } else {
      axis_sq[axis] = {0};
    }
  }
  std::size_t pos = 0;
  for (auto a : axis_sq[0]) {
    for (auto b : axis_sq[1]) {
      for (auto c : axis_sq[2]) {
        out[pos++] = a + b + c;
      }
    }
  }
  return out;
}

double GridSpec::max_wavenumber() const {
  double acc = 0.0;
  for (int n : extents_) {
    acc += 0.25 * n * n;
  }
  return std::sqrt(acc);
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < extents_.size(); ++i) {
    os << (i ? "x" : "") << extents_[i];
  }
  return os.str();
}

GridField::GridField(GridSpec spec, std::vector<Complex> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.size()) {
    throw PreconditionError("grid field value count does not match grid " + spec_.describe());
  }
}

GridField GridField::zeros(const GridSpec& spec) {
  return GridField(spec, std::vector<Complex>(spec.size()));
}

double GridField::max_imag() const {
  double m = 0.0;
  for (const auto& v : values_) {
    m = std::max(m, std::abs(v.imag()));
  }
  return m;
}

ModeField::ModeField(GridSpec spec, std::vector<Complex> coeffs)
    : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != spec_.size()) {
    throw PreconditionError("mode field coefficient count does not match grid " +
                            spec_.describe());
  }
}

ModeField ModeField::zeros(const GridSpec& spec) {
  return ModeField(spec, std::vector<Complex>(spec.size()));
}

const Complex& ModeField::at(const WaveIndex& k) const { return coeffs_[spec_.mode_position(k)]; }

const Complex& ModeField::mean_coefficient() const {
  WaveIndex zero;
  zero.dim = spec_.dim();
  return at(zero);
}

bool ModeField::is_mean_free() const {
  double largest = 1.0;
  for (const auto& c : coeffs_) {
    largest = std::max(largest, std::abs(c));
  }
  return std::abs(mean_coefficient()) <= 1e-10 * largest;
}

CoefficientSource::CoefficientSource(int dim, Function fn, std::optional<double> decay_exponent)
    : dim_(dim), fn_(std::move(fn)), decay_(decay_exponent) {
  if (dim < 1 || dim > kMaxDim) {
    throw PreconditionError("coefficient source dimension must be 1, 2 or 3");
  }
  if (!fn_) {
    throw PreconditionError("coefficient source needs a function");
  }
}

}  // namespace fracspec
