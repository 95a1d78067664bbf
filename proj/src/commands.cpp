#include "fracspec/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "fracspec/bench.hpp"
#include "fracspec/denoise.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/pgm.hpp"
#include "fracspec/phasefield.hpp"
#include "fracspec/random.hpp"
#include "fracspec/snapshot.hpp"
#include "fracspec/transform.hpp"

namespace fracspec::cli {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

fs::path prepare_output(const RunConfig& cfg) {
  const fs::path dir = cfg.get_string("out", "out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  return os;
}

void finish(const RunConfig& cfg, const fs::path& dir, const std::string& command,
            std::uint64_t seed, std::ostream& log) {
  const std::map<std::string, std::string> extra{{"command", command},
                                                 {"rng", std::string(PortableRng::kAlgorithm)},
                                                 {"seed", std::to_string(seed)}};
  cfg.write_manifest(dir / "manifest.txt", extra);
  log << command << ": wrote " << dir.string() << '\n';
}

PgmEncoding pgm_encoding(const RunConfig& cfg) {
  const std::string enc = cfg.get_string("pgm_format", "binary");
  if (enc == "binary") {
    return PgmEncoding::Binary;
  }
  if (enc == "ascii") {
    return PgmEncoding::Ascii;
  }
  throw PreconditionError("pgm_format must be binary or ascii");
}

ModeField load_modes(const fs::path& path) {
  const Snapshot snap = read_snapshot(path);
  if (const auto* g = std::get_if<GridField>(&snap)) {
    return forward_transform(*g);
  }
  return std::get<ModeField>(snap);
}

// Min-max scaled rendering of a 2-D field.
Image render_scaled(const GridField& u) {
  double lo = u[0].real();
  double hi = lo;
  for (const auto& v : u.values()) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::vector<Complex> scaled(u.spec().size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    scaled[i] = (u[i].real() - lo) / span;
  }
  return Image::from_field(GridField(u.spec(), std::move(scaled)));
}

void write_metrics(const fs::path& path, const std::vector<std::pair<std::string, double>>& rows) {
  auto os = open_output(path);
  for (const auto& [k, v] : rows) {
    os << k << " = " << fmt(v) << '\n';
  }
}

struct DenoiseInput {
  Image original;
  Image noisy;
  std::uint64_t seed;
  std::string noise;
};

DenoiseInput denoise_input(const RunConfig& cfg) {
  const std::string input = cfg.get_string("input", "synthetic");
  auto original = [&] {
    if (input == "synthetic") {
      const int h = cfg.get_int("height", 256);
      const int w = cfg.get_int("width", 256);
      const int tile = cfg.get_int("tile", 16);
      return denoise::synthetic_tiles(h, w, tile, cfg.get_seed("image_seed", 7));
    }
    return read_pgm(fs::path(input));
  }();

  const std::string kind = cfg.get_string("noise", "gaussian");
  const std::uint64_t seed = cfg.get_seed("seed", 1);
  if (kind == "none") {
    return {original, original, seed, "none"};
  }
  denoise::NoiseSpec spec;
  if (kind == "gaussian") {
    spec = denoise::NoiseSpec::gaussian(cfg.get_double("sigma", 0.15), seed);
  } else if (kind == "sinusoidal") {
    spec = denoise::NoiseSpec::sinusoidal();
  } else {
    throw PreconditionError("noise must be none, gaussian or sinusoidal");
  }
  Image noisy = denoise::add_noise(original, spec);
  return {std::move(original), std::move(noisy), seed, spec.describe()};
}

void run_phase_field(const RunConfig& cfg, std::ostream& log, const std::string& command,
                     double alpha) {
  phasefield::PhaseFieldParams p;
  p.alpha = alpha;
  p.s = cfg.get_double("s", 1.0);
  p.tilde_eps = cfg.get_double("tilde_eps", 0.125);
  p.tau = cfg.get_double("tau", 0.01);
  p.steps = cfg.get_int("steps", 100);
  const std::string init = cfg.get_string("init", alpha > 0.0 ? "circles" : "random");
  const std::uint64_t seed = cfg.get_seed("seed", 1);

  ModeField u0 = ModeField::zeros(GridSpec::cube(1, 4));
  if (init == "file") {
    u0 = load_modes(cfg.get_string("init_file", ""));
  } else {
    const int d = cfg.get_int("d", 2);
    const int n = cfg.get_int("n", 128);
    const GridSpec spec = GridSpec::cube(d, n);
    if (init == "random") {
      u0 = phasefield::preset_random_mix(spec, cfg.get_double("phi", 0.5), seed,
                                         cfg.get_double("amplitude", 0.2));
    } else if (init == "circles") {
      u0 = phasefield::preset_two_circles(spec);
    } else if (init == "stripes") {
      u0 = phasefield::preset_stripes(spec);
    } else {
      throw PreconditionError("init must be random, circles, stripes or file");
    }
  }
  p.spec = u0.spec();
  p.validate();

  const auto snaps = cfg.get_int_list("snapshots", {0, p.steps});
  const bool render = cfg.get_bool("render", false);
  if (render && p.spec.dim() != 2) {
    throw PreconditionError("render requires a two-dimensional grid");
  }
  const fs::path dir = prepare_output(cfg);
  cfg.reject_unused();

  const auto write_fields = phasefield::snapshot_writer(dir);
  const auto sink = [&](int k, const ModeField& u) {
    write_fields(k, u);
    if (render) {
      std::ostringstream name;
      name << "snapshot_" << std::setw(6) << std::setfill('0') << k << ".pgm";
      const GridField nodal = phasefield::render_levels(inverse_transform(u));
      write_pgm(dir / name.str(), Image::from_field(nodal));
    }
  };
  const auto result = phasefield::run(p, u0, snaps, sink);
  result.trace.write_csv(dir / "trace.csv");
  const auto& last = result.trace.rows.back();
  log << command << ": " << p.steps << " steps, final energy " << fmt(last.energy) << ", mass "
      << fmt(last.mass) << '\n';
  finish(cfg, dir, command, seed, log);
}

}  // namespace

void cmd_poisson(const RunConfig& cfg, std::ostream& log) {
  const double s = cfg.get_double("s", 0.5);
  const std::string source = cfg.get_string("forcing", "benchmark");
  const FracOrder order(s);

  ModeField f = ModeField::zeros(GridSpec::cube(1, 4));
  if (source == "file") {
    f = load_modes(cfg.get_string("forcing_file", ""));
  } else {
    const int d = cfg.get_int("d", 1);
    const int n = cfg.get_int("n", 16);
    const GridSpec spec = GridSpec::cube(d, n);
    if (source == "benchmark") {
      f = project(bench::forcing(bench::product_solution(d), s), spec);
    } else if (source == "zero") {
      f = ModeField::zeros(spec);
    } else {
      throw PreconditionError("forcing must be benchmark, zero or file");
    }
  }
  const bool render = cfg.get_bool("render", false);
  if (render && f.spec().dim() != 2) {
    throw PreconditionError("render requires a two-dimensional grid");
  }
  const fs::path dir = prepare_output(cfg);
  cfg.reject_unused();

  const ModeField u = solve_poisson(f, order);
  const GridField nodal = inverse_transform(u);
  write_snapshot(dir / "forcing.fpfld", f);
  write_snapshot(dir / "solution.fpfld", u);
  write_snapshot(dir / "solution_grid.fpfld", nodal);
  if (u.spec().dim() == 1) {
    const GridField fn = inverse_transform(f);
    auto os = open_output(dir / "profile.csv");
    os << "x,u,f\n";
    for (std::size_t j = 0; j < u.spec().size(); ++j) {
      os << fmt(u.spec().node_coordinate(0, static_cast<int>(j))) << ',' << fmt(nodal[j].real())
         << ',' << fmt(fn[j].real()) << '\n';
    }
  }
  if (render) {
    write_pgm(dir / "solution.pgm", render_scaled(nodal));
  }
  log << "poisson: " << u.spec().describe() << " s=" << s << " |u|_s=" << fmt(sobolev_norm(u, s))
      << '\n';
  finish(cfg, dir, "poisson", 0, log);
}

void cmd_denoise(const RunConfig& cfg, std::ostream& log) {
  const DenoiseInput in = denoise_input(cfg);
  const denoise::DenoiseParams p{cfg.get_double("s", 0.5), cfg.get_double("beta", 0.0),
                                 cfg.get_double("alpha", 50.0)};
  p.validate();
  const PgmEncoding enc = pgm_encoding(cfg);
  const fs::path dir = prepare_output(cfg);
  cfg.reject_unused();

  const Image u = denoise::denoise(in.noisy, p);
  write_pgm(dir / "original.pgm", in.original, enc);
  write_pgm(dir / "noisy.pgm", in.noisy, enc);
  write_pgm(dir / "denoised.pgm", u, enc);
  const double mse_noisy = denoise::mse(in.noisy, in.original);
  const double mse_out = denoise::mse(u, in.original);
  write_metrics(dir / "metrics.txt", {{"mse_noisy", mse_noisy},
                                      {"mse_denoised", mse_out},
                                      {"psnr_noisy", denoise::psnr(in.noisy, in.original)},
                                      {"psnr_denoised", denoise::psnr(u, in.original)}});
  log << "denoise: noise " << in.noise << ", mse " << fmt(mse_noisy) << " -> " << fmt(mse_out)
      << '\n';
  finish(cfg, dir, "denoise", in.seed, log);
}

void cmd_denoise_opt(const RunConfig& cfg, std::ostream& log) {
  const DenoiseInput in = denoise_input(cfg);
  const double beta = cfg.get_double("beta", 0.0);
  const denoise::OptBox box{cfg.get_double("s_lo", 0.05), cfg.get_double("s_hi", 0.5),
                            cfg.get_double("a_lo", 1.0), cfg.get_double("a_hi", 50.0)};
  box.validate();
  const PgmEncoding enc = pgm_encoding(cfg);
  const fs::path dir = prepare_output(cfg);
  cfg.reject_unused();

  const auto best = denoise::optimize_params(in.noisy, in.original, box, beta);
  const Image u = denoise::denoise(in.noisy, {best.s, beta, best.alpha});
  write_pgm(dir / "noisy.pgm", in.noisy, enc);
  write_pgm(dir / "denoised.pgm", u, enc);

  auto os = open_output(dir / "opt_report.txt");
  os << "seed = " << in.seed << '\n'
     << "noise = " << in.noise << '\n'
     << "beta = " << fmt(beta) << '\n'
     << "box = " << fmt(box.s_lo) << ',' << fmt(box.s_hi) << ',' << fmt(box.a_lo) << ','
     << fmt(box.a_hi) << '\n'
     << "iterations = " << best.iterations << '\n'
     << "evaluations = " << best.evaluations << '\n'
     << "s_opt = " << fmt(best.s) << '\n'
     << "alpha_opt = " << fmt(best.alpha) << '\n'
     << "objective_opt = " << fmt(best.objective) << '\n'
     << "mse_noisy = " << fmt(denoise::mse(in.noisy, in.original)) << '\n'
     << "mse_denoised = " << fmt(denoise::mse(u, in.original)) << '\n';
  if (!os) {
    throw IoError("failed writing optimization report");
  }
  log << "denoise-opt: s*=" << fmt(best.s) << " alpha*=" << fmt(best.alpha)
      << " J*=" << fmt(best.objective) << '\n';
  finish(cfg, dir, "denoise-opt", in.seed, log);
}

void cmd_allen_cahn(const RunConfig& cfg, std::ostream& log) {
  run_phase_field(cfg, log, "allen-cahn", 0.0);
}

void cmd_cahn_hilliard(const RunConfig& cfg, std::ostream& log) {
  const double alpha = cfg.get_double("alpha", 1.0);
  if (!(alpha > 0.0)) {
    throw PreconditionError("cahn-hilliard: alpha must be positive");
  }
  run_phase_field(cfg, log, "cahn-hilliard", alpha);
}

void cmd_converge(const RunConfig& cfg, std::ostream& log) {
  const std::string kind = cfg.get_string("kind", "all");
  if (kind != "all" && kind != "poisson" && kind != "heat") {
    throw PreconditionError("kind must be poisson, heat or all");
  }
  std::vector<bench::ConvergenceReport> reports;
  std::vector<std::string> names;
  if (kind != "heat") {
    const int d = cfg.get_int("d", 1);
    const auto s_list = cfg.get_double_list("s_list", {0.25, 0.4});
    const auto n_list = cfg.get_int_list("n_list", {16, 32, 64, 128, 256, 512});
    const int n_ref = cfg.get_int("n_ref", 8192);
    for (double s : s_list) {
      reports.push_back(bench::poisson_convergence(d, s, n_list, n_ref));
      std::ostringstream name;
      name << "poisson_s" << s << ".csv";
      names.push_back(name.str());
    }
  }
  if (kind != "poisson") {
    const double s = cfg.get_double("heat_s", 0.5);
    const double tilde_eps = cfg.get_double("heat_tilde_eps", 0.5);
    const auto taus = cfg.get_double_list("tau_list", {0.05, 0.025, 0.0125, 0.00625, 0.003125});
    const double t_end = cfg.get_double("final_time", 1.0);
    const auto mode = cfg.get_int_list("heat_mode", {2, 0});
    if (mode.size() != 2) {
      throw PreconditionError("heat_mode needs two integers");
    }
    reports.push_back(
        bench::heat_convergence(s, tilde_eps, taus, t_end, make_wave({mode[0], mode[1]})));
    names.push_back("heat.csv");
  }
  const fs::path dir = prepare_output(cfg);
  cfg.reject_unused();

  auto summary = open_output(dir / "report.txt");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto os = open_output(dir / names[i]);
    reports[i].write_csv(os);
    summary << reports[i].verdict() << '\n';
    log << reports[i].verdict() << '\n';
  }
  finish(cfg, dir, "converge", 0, log);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"poisson",       "denoise",      "denoise-opt",
                                              "allen-cahn",    "cahn-hilliard", "converge"};
  return names;
}

int run_command(const std::string& command, const std::optional<fs::path>& config,
                const std::vector<std::string>& overrides, std::ostream& log, std::ostream& err) {
  try {
    RunConfig cfg = config ? RunConfig::from_file(*config) : RunConfig{};
    cfg.apply_overrides(overrides);
    if (command == "poisson") {
      cmd_poisson(cfg, log);
    } else if (command == "denoise") {
      cmd_denoise(cfg, log);
    } else if (command == "denoise-opt") {
      cmd_denoise_opt(cfg, log);
    } else if (command == "allen-cahn") {
      cmd_allen_cahn(cfg, log);
    } else if (command == "cahn-hilliard") {
      cmd_cahn_hilliard(cfg, log);
    } else if (command == "converge") {
      cmd_converge(cfg, log);
    } else {
      throw PreconditionError("unknown command '" + command + "'");
    }
  } catch (const IoError& e) {
    err << "fracspec: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const PreconditionError& e) {
    err << "fracspec: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "fracspec: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace fracspec::cli
