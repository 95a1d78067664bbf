#include "fracspec/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace fracspec {
namespace {

struct FftwFree {
  void operator()(Complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<Complex[], FftwFree>;

FftwBuffer allocate(std::size_t n) {
  auto* raw = static_cast<Complex*>(fftw_malloc(sizeof(Complex) * n));
  if (raw == nullptr) {
    throw std::bad_alloc();
  }
  return FftwBuffer(raw);
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

// Plans are created once per (extents, sign) and executed on fresh
// fftw_malloc buffers through the new-array interface. The planner itself is
// not thread-safe, so creation is serialized; execution is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const GridSpec& spec, int sign) {
    std::vector<int> key(spec.extents().begin(), spec.extents().end());
    key.push_back(sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) {
      return it->second;
    }
    auto scratch = allocate(spec.size());
    fftw_plan plan = fftw_plan_dft(spec.dim(), spec.extents().data(), as_fftw(scratch.get()),
                                   as_fftw(scratch.get()), sign, FFTW_ESTIMATE);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) {
      fftw_destroy_plan(plan);
    }
  }

  std::mutex mutex_;
  std::map<std::vector<int>, fftw_plan> plans_;
};

// Per-axis map between FFTW order (m = k mod n) and the canonical shifted
// order (p = k + n/2). For even n both directions are p = (m + n/2) mod n.
std::array<std::vector<std::size_t>, kMaxDim> shift_tables(const GridSpec& spec) {
  std::array<std::vector<std::size_t>, kMaxDim> tables;
  for (int axis = 0; axis < kMaxDim; ++axis) {
    if (axis < spec.dim()) {
      const auto n = static_cast<std::size_t>(spec.extent(axis));
      tables[axis].resize(n);
      for (std::size_t m = 0; m < n; ++m) {
        tables[axis][m] = (m + n / 2) % n;
      }
    } else {
      tables[axis] = {0};
    }
  }
  return tables;
}

// dst[shift(i)] = scale * src[i]; the shift is an involution.
void shifted_copy(const GridSpec& spec, const Complex* src, Complex* dst, double scale) {
  const auto t = shift_tables(spec);
  const std::size_t n1 = t[1].size();
  const std::size_t n2 = t[2].size();
  std::size_t flat = 0;
  for (std::size_t a = 0; a < t[0].size(); ++a) {
    for (std::size_t b = 0; b < n1; ++b) {
      const std::size_t row = (t[0][a] * n1 + t[1][b]) * n2;
      for (std::size_t c = 0; c < n2; ++c) {
        dst[row + t[2][c]] = scale * src[flat++];
      }
    }
  }
}

}  // namespace

ModeField forward_transform(const GridField& field) {
  const GridSpec& spec = field.spec();
  const std::size_t n = spec.size();
  auto buf = allocate(n);
  std::copy(field.values().begin(), field.values().end(), buf.get());
  fftw_execute_dft(PlanCache::instance().get(spec, FFTW_FORWARD), as_fftw(buf.get()),
                   as_fftw(buf.get()));
  std::vector<Complex> coeffs(n);
  shifted_copy(spec, buf.get(), coeffs.data(), spec.torus_volume() / static_cast<double>(n));
  return ModeField(spec, std::move(coeffs));
}

GridField inverse_transform(const ModeField& modes) {
  const GridSpec& spec = modes.spec();
  const std::size_t n = spec.size();
  auto buf = allocate(n);
  shifted_copy(spec, modes.coeffs().data(), buf.get(), 1.0 / spec.torus_volume());
  fftw_execute_dft(PlanCache::instance().get(spec, FFTW_BACKWARD), as_fftw(buf.get()),
                   as_fftw(buf.get()));
  return GridField(spec, std::vector<Complex>(buf.get(), buf.get() + n));
}

Complex discrete_inner(const GridField& v, const GridField& w) {
  if (!(v.spec() == w.spec())) {
    throw PreconditionError("discrete_inner: grid mismatch (" + v.spec().describe() + " vs " +
                            w.spec().describe() + ")");
  }
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t j = 0; j < v.spec().size(); ++j) {
    const Complex p = v[j] * std::conj(w[j]);
    re.add(p.real());
    im.add(p.imag());
  }
  const double weight = v.spec().torus_volume() / static_cast<double>(v.spec().size());
  return weight * Complex(re.value(), im.value());
}

GridField sample(const GridSpec& spec, const PointFunction& fn) {
  std::vector<Complex> values(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto x = spec.node(j);
    values[j] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(spec.dim())));
  }
  return GridField(spec, std::move(values));
}

ModeField interpolate(const GridSpec& spec, const PointFunction& fn) {
  return forward_transform(sample(spec, fn));
}

ModeField project(const CoefficientSource& src, const GridSpec& spec) {
  if (src.dim() != spec.dim()) {
    throw PreconditionError("project: source and grid dimensions differ");
  }
  std::vector<Complex> coeffs(spec.size());
  for (std::size_t p = 0; p < spec.size(); ++p) {
    coeffs[p] = src(spec.wave_index(p));
  }
  return ModeField(spec, std::move(coeffs));
}

double sobolev_norm(const ModeField& modes, double mu) {
  if (mu < 0.0 && !modes.is_mean_free()) {
    throw PreconditionError("negative-order seminorm requires a mean-free field");
  }
  const auto k2 = modes.spec().squared_wavenumbers();
  SeminormAccumulator acc(mu);
  for (std::size_t p = 0; p < k2.size(); ++p) {
    acc.add(k2[p], modes[p]);
  }
  return acc.norm(modes.spec().dim());
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void SeminormAccumulator::add(std::int64_t squared_wavenumber, Complex coeff) {
  double weight = 1.0;
  if (squared_wavenumber == 0) {
    if (mu_ != 0.0) {
      return;
    }
  } else if (squared_wavenumber != 1 && mu_ != 0.0) {
    weight = std::pow(static_cast<double>(squared_wavenumber), mu_);
  }
  sum_.add(weight * std::norm(coeff));
}

double SeminormAccumulator::norm(int dim) const {
  return std::sqrt(std::max(0.0, weighted_sum()) / std::pow(kTwoPi, dim));
}

}  // namespace fracspec
