#include "fracspec/bench.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "fracspec/fracops.hpp"
#include "fracspec/phasefield.hpp"
#include "fracspec/transform.hpp"

namespace fracspec::bench {
namespace {

Complex hat_coefficient(int k) {
  if (k == 0) {
    return kPi * kPi;
  }
  if (k % 2 == 0) {
    return 0.0;
  }
  return -4.0 / (static_cast<double>(k) * k);
}

// Upper bound for sum over odd k with |k| >= K of |k|^-p, p > 1.
double odd_tail_bound(int K, double p) {
  // Terms are decreasing; sum_{k >= K} k^-p <= K^-p + int_K^inf x^-p dx.
  const double one_side = std::pow(K, -p) + std::pow(K, 1.0 - p) / (p - 1.0);
  return 2.0 * one_side;
}

// Upper bound for sum over all odd k of |k|^-p.
double odd_total_bound(double p) { return 2.0 * (1.0 + 1.0 / (p - 1.0)); }

// Bound on sum over k outside Z_{n_ref}^d of |k|^{2s} |u^_k|^2 for the
// product solution, using (sum k_i^2)^s <= sum |k_i|^{2s} for s <= 1.
double product_tail_bound(int dim, double s, int n_ref) {
  const int K = n_ref / 2;
  double total = 0.0;
  // Region where axis a is outside, weight carried by axis b.
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      double term = 1.0;
      for (int i = 0; i < dim; ++i) {
        const double p = (i == b) ? 4.0 - 2.0 * s : 4.0;
        term *= 16.0 * (i == a ? odd_tail_bound(K, p) : odd_total_bound(p));
      }
      total += term;
    }
  }
  return total;
}

}  // namespace

CoefficientSource hat_coeffs() {
  return CoefficientSource(1, [](const WaveIndex& k) { return hat_coefficient(k[0]); }, 2.0);
}

CoefficientSource product_solution(int dim) {
  return CoefficientSource(
      dim,
      [dim](const WaveIndex& k) {
        if (k.is_zero()) {
          return Complex{};
        }
        Complex acc = 1.0;
        for (int i = 0; i < dim; ++i) {
          acc *= hat_coefficient(k[i]);
        }
        return acc;
      },
      2.0);
}

CoefficientSource forcing(const CoefficientSource& src, double s) {
  const auto decay = src.decay_exponent();
  return CoefficientSource(
      src.dim(),
      [src, s](const WaveIndex& k) {
        if (k.is_zero()) {
          return Complex{};
        }
        return laplacian_symbol(k.squared_norm(), s) * src(k);
      },
      decay ? std::optional<double>(*decay - 2.0 * s) : std::nullopt);
}

double fit_slope(const std::vector<ConvergenceEntry>& entries) {
  if (entries.size() < 3) {
    throw PreconditionError("fit_slope: need at least three entries");
  }
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  const double m = static_cast<double>(entries.size() - 1);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const double x = std::log(entries[i].h);
    const double y = std::log(entries[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool ConvergenceReport::slope_ok() const {
  return std::abs(slope - expected_slope) <= slope_tolerance;
}

bool ConvergenceReport::monotone() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!(entries[i].error < entries[i - 1].error)) {
      return false;
    }
  }
  return true;
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << "h,error,bound\n";
  os << std::setprecision(17);
  for (const auto& e : entries) {
    os << e.h << ',' << e.error << ',' << e.bound << '\n';
  }
}

std::string ConvergenceReport::verdict() const {
  std::ostringstream os;
  os << (slope_ok() && monotone() ? "PASS " : "FAIL ") << label << ": slope " << std::fixed
     << std::setprecision(4) << slope << " expected " << expected_slope << " +/- "
     << slope_tolerance << (monotone() ? "" : " (errors not monotone)");
  return os.str();
}

ConvergenceReport poisson_convergence(int dim, double s, const std::vector<int>& n_list,
                                      int n_ref) {
  if (n_list.size() < 4) {
    throw PreconditionError("poisson_convergence: need at least four resolutions");
  }
  for (int n : n_list) {
    if (8 * n > n_ref) {
      throw PreconditionError("poisson_convergence: reference truncation must be >= 8 * n");
    }
  }
  const FracOrder order(s);
  const CoefficientSource exact = product_solution(dim);
  const CoefficientSource rhs = forcing(exact, s);

  const GridSpec ref = GridSpec::cube(dim, n_ref);
  const auto k2 = ref.squared_wavenumbers();
  std::vector<Complex> u_ref(ref.size());
  std::vector<Complex> f_ref(ref.size());
  for (std::size_t p = 0; p < ref.size(); ++p) {
    const WaveIndex k = ref.wave_index(p);
    u_ref[p] = exact(k);
    f_ref[p] = rhs(k);
  }

  ConvergenceReport report;
  std::ostringstream label;
  label << "poisson d=" << dim << " s=" << s;
  report.label = label.str();
  report.norm = "|u - u_n|_s";
  report.n_ref = n_ref;
  report.expected_slope = -(1.5 - s);

  double scale = 0.0;
  for (const auto& c : u_ref) {
    scale = std::max(scale, std::abs(c));
  }

  for (int n : n_list) {
    const GridSpec spec = GridSpec::cube(dim, n);
    const ModeField f_n = project(rhs, spec);
    const ModeField u_n = solve_poisson(f_n, order);

    SeminormAccumulator err(s);
    SeminormAccumulator bound(-s);
    for (std::size_t p = 0; p < ref.size(); ++p) {
      const WaveIndex k = ref.wave_index(p);
      Complex du = u_ref[p];
      Complex df = f_ref[p];
      if (spec.contains(k)) {
        const std::size_t q = spec.mode_position(k);
        du -= u_n[q];
        df -= f_n[q];
        report.identity_defect = std::max(report.identity_defect, std::abs(du) / scale);
      }
      err.add(k2[p], du);
      bound.add(k2[p], df);
    }
    report.entries.push_back({static_cast<double>(n), err.norm(dim), bound.norm(dim)});
  }
  report.slope = fit_slope(report.entries);

  const double tail = product_tail_bound(dim, s, n_ref) / std::pow(kTwoPi, dim);
  const double smallest = report.entries.back().error;
  report.tail_fraction = tail / (smallest * smallest);
  return report;
}

ConvergenceReport heat_convergence(double s, double tilde_eps, const std::vector<double>& tau_list,
                                   double final_time, const WaveIndex& mode, int n) {
  if (tau_list.size() < 4) {
    throw PreconditionError("heat_convergence: need at least four step sizes");
  }
  const GridSpec spec = GridSpec::cube(2, n);
  if (!spec.contains(mode) || mode.is_zero()) {
    throw PreconditionError("heat_convergence: mode must be a nonzero wave index on the grid");
  }
  const double eps_m2 = phasefield::eps_scaling(tilde_eps, s);
  const double lambda = std::pow(mode.norm(), 2.0 * s) + eps_m2;
  const double exact = std::exp(-lambda * final_time);

  ConvergenceReport report;
  std::ostringstream label;
  label << "heat s=" << s << " k=(" << mode[0] << "," << mode[1] << ")";
  report.label = label.str();
  report.norm = "relative error of the excited mode at final time";
  report.expected_slope = 1.0;

  const double unit = spec.torus_volume();
  for (double tau : tau_list) {
    const int steps = static_cast<int>(std::lround(final_time / tau));
    if (std::abs(steps * tau - final_time) > 1e-9 * final_time) {
      throw PreconditionError("heat_convergence: final time must be a multiple of every tau");
    }
    phasefield::PhaseFieldParams p;
    p.s = s;
    p.alpha = 0.0;
    p.tilde_eps = tilde_eps;
    p.tau = tau;
    p.steps = steps;
    p.spec = spec;
    phasefield::Stepper stepper(p);
    stepper.disable_nonlinearity();

    std::vector<Complex> c0(spec.size());
    c0[spec.mode_position(mode)] = unit;
    ModeField u(spec, std::move(c0));
    for (int k = 0; k < steps; ++k) {
      u = stepper.step(u);
    }
    const Complex computed = u.at(mode) / unit;
    const double recursion = std::pow(1.0 + tau * lambda, -steps);
    report.identity_defect =
        std::max(report.identity_defect, std::abs(computed - recursion) / recursion);
    report.entries.push_back({tau, std::abs(computed - exact) / exact, 0.0});
  }
  report.slope = fit_slope(report.entries);
  return report;
}

}  // namespace fracspec::bench
