#include "fracspec/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracspec/fracops.hpp"
#include "fracspec/nelder_mead.hpp"
#include "fracspec/random.hpp"
#include "fracspec/transform.hpp"

namespace fracspec::denoise {

void DenoiseParams::validate() const {
  if (!(s > 0.0 && s < 1.0)) {
    throw PreconditionError("denoise: s must lie in (0, 1)");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw PreconditionError("denoise: beta must lie in [0, 1]");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw PreconditionError("denoise: alpha must be positive");
  }
}

double multiplier(std::int64_t squared_wavenumber, const DenoiseParams& p) {
  if (squared_wavenumber == 0) {
    return 1.0;
  }
  return p.alpha / (laplacian_symbol(squared_wavenumber, p.s + p.beta) + p.alpha);
}

ModeField denoise_modes(const ModeField& noisy, const DenoiseParams& p) {
  p.validate();
  const auto k2 = noisy.spec().squared_wavenumbers();
  std::vector<Complex> out(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    out[i] = multiplier(k2[i], p) * noisy[i];
  }
  return ModeField(noisy.spec(), std::move(out));
}

Image denoise(const Image& noisy, const DenoiseParams& p) {
  return Image::from_field(inverse_transform(denoise_modes(forward_transform(noisy.to_field()), p)));
}

double energy(const ModeField& v, const ModeField& g, const DenoiseParams& p) {
  p.validate();
  if (!(v.spec() == g.spec())) {
    throw PreconditionError("denoise energy: grid mismatch");
  }
  const auto k2 = v.spec().squared_wavenumbers();
  SeminormAccumulator regular(p.s);
  SeminormAccumulator fidelity(-p.beta);
  for (std::size_t i = 0; i < k2.size(); ++i) {
    regular.add(k2[i], v[i]);
    fidelity.add(k2[i], v[i] - g[i]);
  }
  const double r = regular.norm(v.spec().dim());
  const double f = fidelity.norm(v.spec().dim());
  return 0.5 * r * r + 0.5 * p.alpha * f * f;
}

NoiseSpec NoiseSpec::gaussian(double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw PreconditionError("gaussian noise: sigma must be non-negative");
  }
  return NoiseSpec{Kind::Gaussian, sigma, seed};
}

NoiseSpec NoiseSpec::sinusoidal() { return NoiseSpec{Kind::Sinusoidal, 0.0, 0}; }

std::string NoiseSpec::describe() const {
  std::ostringstream os;
  if (kind == Kind::Gaussian) {
    os << "gaussian(sigma=" << sigma << ", seed=" << seed << ", rng=" << PortableRng::kAlgorithm
       << ")";
  } else {
    os << "sinusoidal(5 sin(20 pi x1) sin(20 pi x2))";
  }
  return os.str();
}

double sinusoidal_noise(double xh1, double xh2) {
  return 5.0 * std::sin(20.0 * kPi * xh1) * std::sin(20.0 * kPi * xh2);
}

Image add_noise(const Image& original, const NoiseSpec& spec) {
  std::vector<double> px(original.pixels().begin(), original.pixels().end());
  if (spec.kind == NoiseSpec::Kind::Gaussian) {
    if (spec.sigma > 0.0) {
      PortableRng rng(spec.seed);
      for (auto& v : px) {
        v += spec.sigma * rng.gaussian();
      }
    }
  } else {
    const int h = original.height();
    const int w = original.width();
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        px[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)] +=
            sinusoidal_noise(static_cast<double>(r) / h, static_cast<double>(c) / w);
      }
    }
  }
  return Image(original.height(), original.width(), std::move(px));
}

double mse(const Image& u, const Image& o) {
  if (u.height() != o.height() || u.width() != o.width()) {
    throw PreconditionError("mse: image dimensions differ");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < u.pixels().size(); ++i) {
    const double d = u.pixels()[i] - o.pixels()[i];
    acc.add(d * d);
  }
  return acc.value() / static_cast<double>(u.pixels().size());
}

double psnr(const Image& u, const Image& o) {
  const double e = mse(u, o);
  if (e == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(1.0 / e);
}

void OptBox::validate() const {
  if (!(s_lo < s_hi) || !(a_lo < a_hi)) {
    throw PreconditionError("optimization box must satisfy s_lo < s_hi and a_lo < a_hi");
  }
  if (!(s_lo > 0.0 && s_hi < 1.0) || !(a_lo > 0.0)) {
    throw PreconditionError("optimization box must lie in 0 < s < 1, alpha > 0");
  }
}

DenoiseObjective::DenoiseObjective(const Image& noisy, const Image& original, double beta)
    : spec_(noisy.spec()), beta_(beta) {
  if (!(noisy.spec() == original.spec())) {
    throw PreconditionError("optimize: noisy and original images differ in size");
  }
  k2_ = spec_.squared_wavenumbers();
  const ModeField g = forward_transform(noisy.to_field());
  const ModeField o = forward_transform(original.to_field());
  g_.assign(g.coeffs().begin(), g.coeffs().end());
  o_.assign(o.coeffs().begin(), o.coeffs().end());
}

double DenoiseObjective::operator()(double s, double alpha) const {
  const DenoiseParams p{s, beta_, alpha};
  CompensatedSum acc;
  for (std::size_t i = 0; i < k2_.size(); ++i) {
    acc.add(std::norm(multiplier(k2_[i], p) * g_[i] - o_[i]));
  }
  return acc.value() / spec_.torus_volume();
}

OptResult optimize_params(const Image& noisy, const Image& original, const OptBox& box,
                          double beta) {
  box.validate();
  DenoiseParams{box.s_lo, beta, box.a_lo}.validate();
  const DenoiseObjective objective(noisy, original, beta);

  OptResult best;
  best.objective = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < kSeedGrid; ++i) {
    for (int j = 0; j < kSeedGrid; ++j) {
      const double s = box.s_lo + (box.s_hi - box.s_lo) * i / (kSeedGrid - 1);
      const double a = box.a_lo + (box.a_hi - box.a_lo) * j / (kSeedGrid - 1);
      const double value = objective(s, a);
      if (value < best.objective) {
        best.s = s;
        best.alpha = a;
        best.objective = value;
        best_i = i;
      }
    }
  }
  constexpr int seed_evaluations = kSeedGrid * kSeedGrid;

  const double log_lo = std::log(box.a_lo);
  const double log_span = std::log(box.a_hi) - log_lo;
  auto to_params = [&](const Point2& t) {
    const double s = box.s_lo + t[0] * (box.s_hi - box.s_lo);
    double a = t[1] <= 0.0 ? box.a_lo
               : t[1] >= 1.0 ? box.a_hi
                             : std::clamp(std::exp(log_lo + t[1] * log_span), box.a_lo, box.a_hi);
    return std::pair{std::clamp(s, box.s_lo, box.s_hi), a};
  };
  const Point2 start{static_cast<double>(best_i) / (kSeedGrid - 1),
                     std::log(best.alpha / box.a_lo) / log_span};

  const auto nm = nelder_mead_box(
      [&](const Point2& t) {
        const auto [s, a] = to_params(t);
        return objective(s, a);
      },
      start);

  OptResult out = best;
  out.iterations = nm.iterations;
  out.evaluations = seed_evaluations + nm.evaluations;
  if (nm.value < best.objective) {
    const auto [s, a] = to_params(nm.argmin);
    out.s = s;
    out.alpha = a;
    out.objective = nm.value;
  }
  return out;
}

Image synthetic_tiles(int height, int width, int tile, std::uint64_t seed) {
  if (tile < 1) {
    throw PreconditionError("tile size must be positive");
  }
  const int tiles_y = (height + tile - 1) / tile;
  const int tiles_x = (width + tile - 1) / tile;
  PortableRng rng(seed);
  std::vector<double> level(static_cast<std::size_t>(tiles_y) * static_cast<std::size_t>(tiles_x));
  for (auto& v : level) {
    v = rng.uniform();
  }
  std::vector<double> px(static_cast<std::size_t>(height) * static_cast<std::size_t>(width));
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      px[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] =
          level[static_cast<std::size_t>(r / tile) * static_cast<std::size_t>(tiles_x) +
                static_cast<std::size_t>(c / tile)];
    }
  }
  return Image(height, width, std::move(px));
}

}  // namespace fracspec::denoise
