#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fmt/ostream.h>

#include "shellres/shellres.hpp"

namespace shellres::app {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, nonconvergence = 3 };

inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidInput:
    case ErrorCode::OrderedRadii:
    case ErrorCode::AlphaNegative:
    case ErrorCode::ArityTooSmall:
    case ErrorCode::ContourTooClose:
    case ErrorCode::EnclosedPoleMismatch:
      return config_error;
    default:
      return nonconvergence;
  }
}

/// Round-trip exact scientific notation.
inline std::string num(double x) { return fmt::format("{:.16e}", x); }

struct Output {
  std::filesystem::path dir;
  bool timestamp = true;

  std::ofstream open(const std::string& name) const {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + (dir / name).string() + "'");
    return out;
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  void header(std::ostream& out, const std::string& title) const {
    fmt::print(out, "# {}\n", title);
    if (timestamp) {
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      fmt::print(out, "generated = {}\n", buf);
    }
  }
};

inline void write_potential(std::ostream& out, const PotentialSpec& pot) {
  fmt::print(out, "[potential]\nv0 = {}\na = {}\nb = {}\nscale = {}\n", num(pot.v0), num(pot.a), num(pot.b),
             num(pot.scale));
}

// ---------------------------------------------------------------------------

struct SmatrixArgs {
  double k_min = 0.1, k_max = 20.0;
  std::size_t n = 200;
};

/// k, Re S, Im S, |S|, unwrapped phase of S.
inline void smatrix_csv(std::ostream& out, const PotentialSpec& pot, const SmatrixArgs& args) {
  if (args.n < 2 || !(args.k_max > args.k_min)) throw Error(ErrorCode::InvalidInput, "k grid needs n >= 2 and k_min < k_max");
  fmt::print(out, "k,re_s,im_s,abs_s,phase\n");
  double phase = 0.0;
  cplx prev{};
  for (std::size_t i = 0; i < args.n; ++i) {
    const double k = args.k_min + (args.k_max - args.k_min) * static_cast<double>(i) / static_cast<double>(args.n - 1);
    const cplx s = s_matrix(WaveNumber(k), pot);
    phase = i == 0 ? std::arg(s) : phase + std::arg(s / prev);
    prev = s;
    fmt::print(out, "{},{},{},{},{}\n", num(k), num(s.real()), num(s.imag()), num(std::abs(s)), num(phase));
  }
}

inline void poles_csv(std::ostream& out, std::span<const ResonancePole> poles) {
  fmt::print(out, "n,re_k,im_k,re_z,im_z,energy,gamma,re_n_sq,im_n_sq,newton_error\n");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", i + 1, num(p.k.re()), num(p.k.im()), num(p.z.z.real()),
               num(p.z.z.imag()), num(p.energy()), num(p.width()), num(p.n_sq.real()), num(p.n_sq.imag()),
               num(p.newton_error));
  }
}

inline void antiresonances_csv(std::ostream& out, std::span<const ResonancePole> poles, const PotentialSpec& pot) {
  fmt::print(out, "n,re_k,im_k,re_z,im_z,re_m_sq,im_m_sq\n");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const AntiResonancePole a = pair_antiresonance(poles[i], pot);
    fmt::print(out, "{},{},{},{},{},{},{}\n", i + 1, num(a.k.re()), num(a.k.im()), num(a.z.z.real()),
               num(a.z.z.imag()), num(a.m_sq.real()), num(a.m_sq.imag()));
  }
}

struct GamowArgs {
  std::size_t pole = 1;  // 1-based, in the order of the poles table
  double r_max = 0.0;    // 0 means 2b
  std::size_t n = 400;
  bool anti = false;
};

inline void gamow_csv(std::ostream& out, const GamowState& state, const PotentialSpec& pot, const GamowArgs& args) {
  const double r_max = args.r_max > 0.0 ? args.r_max : 2.0 * pot.b;
  fmt::print(out, "r,re_u,im_u,abs_u\n");
  for (std::size_t i = 0; i <= args.n; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(args.n);
    const cplx u = state.value(r, pot);
    fmt::print(out, "{},{},{},{}\n", num(r), num(u.real()), num(u.imag()), num(std::abs(u)));
  }
}

struct ExpandArgs {
  ExpansionMode mode = ExpansionMode::in_in;
  std::size_t poles = 4;
  std::vector<double> alphas{0.2, 0.1, 0.05};
  double k_max = 40.0;
  double depth = 1.0;
};

inline ExpansionMode parse_mode(const std::string& text) {
  if (text == "in-in") return ExpansionMode::in_in;
  if (text == "out-out") return ExpansionMode::out_out;
  if (text == "out-in") return ExpansionMode::out_in;
  throw Error(ErrorCode::InvalidInput, "unknown mode '" + text + "' (in-in, out-out or out-in)");
}

inline void expansion_text(std::ostream& out, const Output& o, const RunConfig& cfg, const ExpandArgs& args,
                           const ExpansionReport& rep, double relative) {
  o.header(out, "resonance expansion report");
  write_potential(out, cfg.potential);
  fmt::print(out, "\n[expansion]\nmode = {}\nextrapolated = {}\nalphas = {}\nk_max = {}\ncontour_depth = {}\n",
             mode_name(rep.mode), rep.extrapolated ? "true" : "false", fmt::join(rep.alphas, ", "), num(args.k_max),
             num(args.depth));
  fmt::print(out, "error_l2 = {}\nerror_max = {}\nrelative_l2 = {}\ntolerance = {}\n", num(rep.error_l2),
             num(rep.error_max), num(relative), num(cfg.tolerance("expansion")));
  fmt::print(out, "monotone = {}\n", rep.monotone ? "true" : "false");
  for (std::size_t p = 0; p < rep.pole_k.size(); ++p) {
    fmt::print(out, "\n[pole.{}]\nre_k = {}\nim_k = {}\nl2_contribution = {}\n", p + 1, num(rep.pole_k[p].real()),
               num(rep.pole_k[p].imag()), num(l2_norm(rep.radii, rep.pole_terms[p])));
  }
  fmt::print(out, "\n[norms]\ngamow_sum = {}\nbackground = {}\ndirect = {}\n", num(l2_norm(rep.radii, rep.gamow_sum)),
             num(l2_norm(rep.radii, rep.background)), num(l2_norm(rep.radii, rep.direct)));
}

/// r, |phi|, |phi_rec|, |phi_rec - direct| where phi_rec is Gamow sum plus background.
inline void expansion_csv(std::ostream& out, const TestFunction& test, const ExpansionReport& rep) {
  fmt::print(out, "r,abs_phi,abs_phi_rec,abs_error\n");
  const auto rec = rep.expansion();
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    fmt::print(out, "{},{},{},{}\n", num(rep.radii[i]), num(std::abs(test(rep.radii[i]))), num(std::abs(rec[i])),
               num(std::abs(rec[i] - rep.direct[i])));
}

/// Runs the expansion; returns the report and its relative L2 error on (0, b].
inline std::pair<ExpansionReport, double> run_expansion(const RunConfig& cfg, const ExpandArgs& args) {
  const PotentialSpec& pot = cfg.potential;
  const TestFunction bump = TestFunction::gaussian_bump(cfg.bump.center, cfg.bump.width, cfg.bump.support);
  const SearchRegion wide{cfg.search.re_min, std::max(cfg.search.re_max, args.k_max), cfg.search.im_min,
                          cfg.search.im_max};
  const auto all = find_resonances(wide, pot, cfg.newton_tol);
  const Contour contour = enclosing_contour(all, args.poles, args.depth, args.k_max, cfg.contour.density);
  ExpansionOptions opts;
  opts.radii = TestFunction::uniform_grid(pot.b, 200);
  opts.real_axis_nodes = cfg.contour.real_axis_nodes;
  std::vector<ExpansionReport> reps;
  for (double alpha : args.alphas)
    reps.push_back(resonance_expansion(bump, std::span(all).first(args.poles), contour, alpha, pot, args.mode, opts));
  ExpansionReport rep = reps.size() == 1 ? reps.front() : alpha_extrapolate(reps);
  const double relative = rep.error_l2 / l2_norm(rep.radii, rep.direct);
  return {std::move(rep), relative};
}

inline bool print_verification(std::ostream& out, std::span<const Check> rows) {
  fmt::print(out, "{:<16} {:<40} {:>12} {:>10}  {}\n", "check", "point", "value", "tolerance", "result");
  bool all = true;
  for (const auto& c : rows) {
    const bool skipped = std::isnan(c.value);
    const std::string value = skipped ? "n/a" : fmt::format("{:.3e}", c.value);
    const std::string bound =
        skipped || c.diagnostic ? "-" : fmt::format("{}{:.0e}", c.at_least ? ">=" : "", c.tolerance);
    const std::string result = skipped ? "skip" : c.diagnostic ? "info" : (c.pass ? "pass" : "FAIL");
    fmt::print(out, "{:<16} {:<40} {:>12} {:>10}  {}", c.name, c.point, value, bound, result);
    if (!c.note.empty()) fmt::print(out, "  ({})", c.note);
    fmt::print(out, "\n");
    all = all && c.pass;
  }
  return all;
}

}  // namespace shellres::app
