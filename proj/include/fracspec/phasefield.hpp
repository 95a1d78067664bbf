// Fractional Allen-Cahn (alpha = 0) and Cahn-Hilliard (alpha > 0) evolution
//
//   (-Delta)^{-alpha} d_t u + (-Delta)^s u = -eps^{-2} f(u)
//
// discretized by the semi-implicit convex splitting f = f_cx + f_cv with the
// linear convex part f_cx(u) = u taken implicitly and f_cv explicitly, so each
// step is a diagonal solve in Fourier space.
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "fracspec/grid.hpp"

namespace fracspec::phasefield {

// Double-well potential F(u) = (1/2)(1 - u^2)^2 / (1 + u^2) and its splitting.
namespace potential {

template <typename T>
T F(T u) {
  const T u2 = u * u;
  return T(0.5) * (T(1) - u2) * (T(1) - u2) / (T(1) + u2);
}

template <typename T>
T f(T u) {
  const T q = T(1) + u * u;
  return u - T(4) * u / (q * q);
}

template <typename T>
T f_convex(T u) {
  return u;
}

template <typename T>
T f_concave(T u) {
  const T q = T(1) + u * u;
  return T(-4) * u / (q * q);
}

}  // namespace potential

/// eps^{-2} as a function of the interface parameter tilde_eps and order s.
double eps_scaling(double tilde_eps, double s);

struct PhaseFieldParams {
  double s = 1.0;           ///< 0 < s <= 1
  double alpha = 0.0;       ///< 0 for Allen-Cahn; 0 < alpha <= s for Cahn-Hilliard
  double tilde_eps = 0.125; ///< 0 < tilde_eps < 1
  double tau = 0.01;
  int steps = 0;
  GridSpec spec = GridSpec::cube(2, 64);

  void validate() const;
  double eps_m2() const { return eps_scaling(tilde_eps, s); }
};

/// Precomputes the per-mode symbols for a fixed parameter set.
class Stepper {
 public:
  explicit Stepper(const PhaseFieldParams& p);

  /// Drops the explicit concave term, leaving the linear problem
  /// (-Delta)^{-alpha} d_t u + (-Delta)^s u + eps^{-2} u = 0.
  void disable_nonlinearity() { nonlinear_ = false; }

  ModeField step(const ModeField& prev) const;
  const PhaseFieldParams& params() const { return params_; }

 private:
  PhaseFieldParams params_;
  double eps_m2_;
  bool nonlinear_ = true;
  std::vector<double> mobility_;  ///< a_k / tau, a_k = |k|^{-2 alpha}
  std::vector<double> denom_;     ///< a_k / tau + |k|^{2s} + eps^{-2}
  std::size_t zero_position_ = 0;
};

ModeField step(const ModeField& prev, const PhaseFieldParams& p);

/// E(u) = 1/2 |u|_s^2 + eps^{-2} (F(u), 1)_n, with F applied to Re u_j.
double energy(const ModeField& u, const PhaseFieldParams& p);

/// (u, 1)_n
double mass(const ModeField& u);

struct TraceRow {
  int step = 0;
  double time = 0.0;
  double energy = 0.0;
  double mass = 0.0;
  std::optional<double> incr_minus_alpha;  ///< |d_t u^k|_{-alpha}
  std::optional<double> incr_s;            ///< |d_t u^k|_s
};

struct EnergyTrace {
  std::vector<TraceRow> rows;

  /// Header "step,time,energy,mass,incr_minus_alpha,incr_s"; increments are
  /// blank at step 0. Values are printed with 17 significant digits.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::filesystem::path& path) const;
};

using SnapshotSink = std::function<void(int step, const ModeField& u)>;

struct RunResult {
  EnergyTrace trace;
  ModeField final_state;
};

/// Iterates `p.steps` steps from u0, recording the trace at every step and
/// handing the iterate to `sink` at each step listed in `snapshot_steps`.
RunResult run(const PhaseFieldParams& p, const ModeField& u0,
              const std::vector<int>& snapshot_steps = {}, const SnapshotSink& sink = {});

/// Writes snapshot_<step>.fpfld (mode representation) into `dir`.
SnapshotSink snapshot_writer(const std::filesystem::path& dir);

/// 1 inside the disks of radius pi/3 centred at (2pi/3, pi) and (4pi/3, pi),
/// -1 elsewhere. Requires d = 2.
ModeField preset_two_circles(const GridSpec& spec);

/// 2 phi - 1 + delta_j, delta_j uniform in [-amplitude, amplitude].
ModeField preset_random_mix(const GridSpec& spec, double phi, std::uint64_t seed,
                            double amplitude = 0.2);

/// sign(cos x_1): two flat interfaces at x_1 = pi/2 and 3pi/2.
ModeField preset_stripes(const GridSpec& spec);

/// Interface thickness in nodes along the transect through `index` of the
/// other axes, running along axis 0: (max - min) / max |u_{j+1} - u_j|.
double interface_thickness(const GridField& u, int transverse_index = 0);

/// Maps u in [-1, 1] linearly to [0, 1] for PGM rendering (d = 2).
GridField render_levels(const GridField& u);

}  // namespace fracspec::phasefield
