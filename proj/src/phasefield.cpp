#include "fracspec/phasefield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fracspec/fracops.hpp"
#include "fracspec/random.hpp"
#include "fracspec/snapshot.hpp"
#include "fracspec/transform.hpp"

namespace fracspec::phasefield {

double eps_scaling(double tilde_eps, double s) {
  if (!(tilde_eps > 0.0 && tilde_eps < 1.0)) {
    throw PreconditionError("eps_scaling: tilde_eps must lie in (0, 1)");
  }
  if (!(s > 0.0 && s <= 1.0)) {
    throw PreconditionError("eps_scaling: s must lie in (0, 1]");
  }
  if (s < 0.5) {
    return std::pow(tilde_eps, -2.0 * s);
  }
  if (s == 0.5) {
    return std::abs(std::log(tilde_eps));
  }
  if (s < 1.0) {
    return std::pow(tilde_eps, 1.0 - 2.0 * s);
  }
  return 1.0 / (tilde_eps * tilde_eps);
}

void PhaseFieldParams::validate() const {
  if (!(s > 0.0 && s <= 1.0)) {
    throw PreconditionError("phase field: s must lie in (0, 1]");
  }
  if (!(alpha >= 0.0)) {
    throw PreconditionError("phase field: alpha must be non-negative");
  }
  if (alpha > s) {
    throw PreconditionError("phase field: alpha must not exceed s");
  }
  if (!(tilde_eps > 0.0 && tilde_eps < 1.0)) {
    throw PreconditionError("phase field: tilde_eps must lie in (0, 1)");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw PreconditionError("phase field: tau must be positive");
  }
  if (steps < 0) {
    throw PreconditionError("phase field: step count must be non-negative");
  }
}

Stepper::Stepper(const PhaseFieldParams& p) : params_(p) {
  params_.validate();
  eps_m2_ = params_.eps_m2();
  const auto k2 = params_.spec.squared_wavenumbers();
  mobility_.resize(k2.size());
  denom_.resize(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    if (k2[i] == 0) {
      zero_position_ = i;
      mobility_[i] = 1.0 / params_.tau;
      denom_[i] = 1.0 / params_.tau + eps_m2_;
      continue;
    }
    mobility_[i] = laplacian_symbol(k2[i], -params_.alpha) / params_.tau;
    denom_[i] = mobility_[i] + laplacian_symbol(k2[i], params_.s) + eps_m2_;
  }
}

ModeField Stepper::step(const ModeField& prev) const {
  if (!(prev.spec() == params_.spec)) {
    throw PreconditionError("phase field step: field grid does not match parameters");
  }
  std::vector<Complex> explicit_part(prev.spec().size());
  if (nonlinear_) {
    const GridField nodal = inverse_transform(prev);
    std::vector<Complex> values(nodal.values().begin(), nodal.values().end());
    for (auto& v : values) {
      v = potential::f_concave(v);
    }
    const ModeField w = forward_transform(GridField(prev.spec(), std::move(values)));
    explicit_part.assign(w.coeffs().begin(), w.coeffs().end());
  }

  std::vector<Complex> next(prev.spec().size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = (mobility_[i] * prev[i] - eps_m2_ * explicit_part[i]) / denom_[i];
  }
  if (params_.alpha > 0.0) {
    next[zero_position_] = prev[zero_position_];
  }
  return ModeField(prev.spec(), std::move(next));
}

ModeField step(const ModeField& prev, const PhaseFieldParams& p) { return Stepper(p).step(prev); }

double energy(const ModeField& u, const PhaseFieldParams& p) {
  const double grad = sobolev_norm(u, p.s);
  const GridField nodal = inverse_transform(u);
  CompensatedSum acc;
  for (const auto& v : nodal.values()) {
    acc.add(potential::F(v.real()));
  }
  const double cell = u.spec().torus_volume() / static_cast<double>(u.spec().size());
  return 0.5 * grad * grad + p.eps_m2() * cell * acc.value();
}

double mass(const ModeField& u) { return u.mean_coefficient().real(); }

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

TraceRow make_row(int k, const ModeField& u, const ModeField* prev, const PhaseFieldParams& p) {
  TraceRow row;
  row.step = k;
  row.time = k * p.tau;
  row.energy = energy(u, p);
  row.mass = mass(u);
  if (prev != nullptr) {
    std::vector<Complex> diff(u.spec().size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = (u[i] - (*prev)[i]) / p.tau;
    }
    const ModeField rate(u.spec(), std::move(diff));
    row.incr_minus_alpha = sobolev_norm(rate, -p.alpha);
    row.incr_s = sobolev_norm(rate, p.s);
  }
  return row;
}

}  // namespace

void EnergyTrace::write_csv(std::ostream& os) const {
  os << "step,time,energy,mass,incr_minus_alpha,incr_s\n";
  for (const auto& r : rows) {
    os << r.step << ',' << format_value(r.time) << ',' << format_value(r.energy) << ','
       << format_value(r.mass) << ','
       << (r.incr_minus_alpha ? format_value(*r.incr_minus_alpha) : std::string()) << ','
       << (r.incr_s ? format_value(*r.incr_s) : std::string()) << '\n';
  }
}

void EnergyTrace::write_csv(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  write_csv(os);
  if (!os) {
    throw IoError("failed writing " + path.string());
  }
}

RunResult run(const PhaseFieldParams& p, const ModeField& u0, const std::vector<int>& snapshot_steps,
              const SnapshotSink& sink) {
  const Stepper stepper(p);
  if (!(u0.spec() == p.spec)) {
    throw PreconditionError("phase field run: initial field grid does not match parameters");
  }
  auto wanted = [&](int k) {
    return sink && std::find(snapshot_steps.begin(), snapshot_steps.end(), k) != snapshot_steps.end();
  };

  RunResult result{EnergyTrace{}, u0};
  result.trace.rows.reserve(static_cast<std::size_t>(p.steps) + 1);
  result.trace.rows.push_back(make_row(0, u0, nullptr, p));
  if (wanted(0)) {
    sink(0, u0);
  }
  for (int k = 1; k <= p.steps; ++k) {
    ModeField next = stepper.step(result.final_state);
    result.trace.rows.push_back(make_row(k, next, &result.final_state, p));
    result.final_state = std::move(next);
    if (wanted(k)) {
      sink(k, result.final_state);
    }
  }
  return result;
}

SnapshotSink snapshot_writer(const std::filesystem::path& dir) {
  return [dir](int k, const ModeField& u) {
    std::ostringstream name;
    name << "snapshot_" << std::setw(6) << std::setfill('0') << k << ".fpfld";
    write_snapshot(dir / name.str(), u);
  };
}

ModeField preset_two_circles(const GridSpec& spec) {
  if (spec.dim() != 2) {
    throw PreconditionError("two-circles preset needs a two-dimensional grid");
  }
  const double r2 = (kPi / 3.0) * (kPi / 3.0);
  return interpolate(spec, [r2](std::span<const double> x) {
    auto inside = [&](double cx) {
      const double a = x[0] - cx;
      const double b = x[1] - kPi;
      return a * a + b * b < r2;
    };
    return Complex(inside(2.0 * kPi / 3.0) || inside(4.0 * kPi / 3.0) ? 1.0 : -1.0);
  });
}

ModeField preset_random_mix(const GridSpec& spec, double phi, std::uint64_t seed, double amplitude) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw PreconditionError("random-mix preset: phi must lie in [0, 1]");
  }
  if (!(amplitude >= 0.0)) {
    throw PreconditionError("random-mix preset: amplitude must be non-negative");
  }
  PortableRng rng(seed);
  std::vector<Complex> values(spec.size());
  for (auto& v : values) {
    v = 2.0 * phi - 1.0 + rng.uniform(-amplitude, amplitude);
  }
  return forward_transform(GridField(spec, std::move(values)));
}

ModeField preset_stripes(const GridSpec& spec) {
  return interpolate(spec, [](std::span<const double> x) {
    return Complex(std::cos(x[0]) > 0.0 ? 1.0 : -1.0);
  });
}

double interface_thickness(const GridField& u, int transverse_index) {
  const GridSpec& spec = u.spec();
  const int n = spec.extent(0);
  const std::size_t stride = spec.size() / static_cast<std::size_t>(n);
  if (transverse_index < 0 || static_cast<std::size_t>(transverse_index) >= stride) {
    throw PreconditionError("interface_thickness: transect index out of range");
  }
  std::vector<double> line(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    line[static_cast<std::size_t>(j)] =
        u[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(transverse_index)].real();
  }
  const auto [lo, hi] = std::minmax_element(line.begin(), line.end());
  double steepest = 0.0;
  for (int j = 0; j < n; ++j) {
    steepest = std::max(steepest, std::abs(line[static_cast<std::size_t>((j + 1) % n)] -
                                           line[static_cast<std::size_t>(j)]));
  }
  if (steepest == 0.0) {
    throw PreconditionError("interface_thickness: transect is constant, no interface");
  }
  return (*hi - *lo) / steepest;
}

GridField render_levels(const GridField& u) {
  std::vector<Complex> values(u.spec().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = 0.5 * (u[i].real() + 1.0);
  }
  return GridField(u.spec(), std::move(values));
}

}  // namespace fracspec::phasefield
