#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "shellres/error.hpp"
#include "shellres/expansions.hpp"
#include "shellres/model.hpp"
#include "shellres/poles.hpp"

namespace shellres {

/// Dip contour enclosing exactly the first n of the sorted poles: it rises
/// back to the real axis halfway between pole n and pole n+1.
inline Contour enclosing_contour(std::span<const ResonancePole> sorted, std::size_t n, double depth, double k_max,
                                 double density = 64.0) {
  if (n > sorted.size()) throw Error(ErrorCode::InvalidInput, "more poles requested than were found");
  for (std::size_t i = 0; i < n; ++i)
    if (!(depth > -sorted[i].k.im() + 1e-3))
      throw Error(ErrorCode::ContourTooClose, "contour depth must lie below every enclosed pole");
  double right = k_max;
  if (n < sorted.size()) {
    const double lo = n == 0 ? 0.0 : sorted[n - 1].k.re();
    right = std::min(k_max, 0.5 * (lo + sorted[n].k.re()));
  }
  return Contour::dip(depth, k_max, right, density);
}

struct StudySettings {
  std::size_t n_poles = 4;
  std::vector<double> alphas{0.2, 0.1, 0.05};
  double k_max = 40.0;
  double depth = 1.0;
  double deep_factor = 1.5;  // second contour for the deformation check
  double density = 64.0;
  std::size_t real_axis_nodes = 4000;
  std::size_t radial_nodes = 96;
  std::size_t n_radii = 200;  // output grid on (0, b]
  ExpansionMode mode = ExpansionMode::in_in;
  bool naive_control = true;
};

struct StudyResult {
  std::vector<ExpansionReport> reports;  // shallow contour, one per alpha
  ExpansionReport extrapolated;
  std::vector<cplx> direct_unregulated;  // reconstruction at alpha = 0
  double relative_error = 0.0;           // extrapolated, relative L2 on (0, b]
  double smallest_single_error = 0.0;    // min over alpha of the relative L2 error
  double deformation = 0.0;              // L2 gap between two contours
  double bookkeeping = std::numeric_limits<double>::quiet_NaN();  // L2 gap after adding pole n+1
  double naive_deformation = std::numeric_limits<double>::quiet_NaN();
  double regulator_bias = 0.0;  // L2 of extrapolated direct minus the alpha = 0 reconstruction
  bool monotone = true;
};

namespace detail {

inline ExpansionReport extrapolated_run(const TestFunction& test, std::span<const ResonancePole> poles,
                                        const Contour& contour, const PotentialSpec& pot, const StudySettings& s,
                                        const ExpansionOptions& opts, std::vector<ExpansionReport>* keep = nullptr) {
  std::vector<ExpansionReport> reps;
  for (double alpha : s.alphas) reps.push_back(resonance_expansion(test, poles, contour, alpha, pot, s.mode, opts));
  if (keep) *keep = reps;
  return reps.size() == 1 ? reps.front() : alpha_extrapolate(reps);
}

}  // namespace detail

/// The full resonance-expansion battery for one test function: regulated
/// reports, extrapolation to alpha = 0, deformation invariance, residue
/// bookkeeping, and the naive wrong-rim control.
inline StudyResult run_study(const TestFunction& test, std::span<const ResonancePole> sorted, const PotentialSpec& pot,
                             const StudySettings& s) {
  if (s.alphas.empty()) throw Error(ErrorCode::ArityTooSmall, "no regulator values given");
  StudyResult out;
  ExpansionOptions opts;
  opts.radii = TestFunction::uniform_grid(pot.b, s.n_radii);
  opts.real_axis_nodes = s.real_axis_nodes;
  opts.radial_nodes = s.radial_nodes;
  const auto& radii = opts.radii;
  const auto chosen = sorted.first(s.n_poles);

  const Contour shallow = enclosing_contour(sorted, s.n_poles, s.depth, s.k_max, s.density);
  const Contour deep = enclosing_contour(sorted, s.n_poles, s.depth * s.deep_factor, s.k_max, s.density);
  out.extrapolated = detail::extrapolated_run(test, chosen, shallow, pot, s, opts, &out.reports);
  out.monotone = out.extrapolated.monotone;
  const ExpansionReport other = detail::extrapolated_run(test, chosen, deep, pot, s, opts);

  const auto norm_of = [&](const std::vector<cplx>& v) { return l2_norm(radii, v); };
  out.relative_error = out.extrapolated.error_l2 / norm_of(out.extrapolated.direct);
  out.smallest_single_error = std::numeric_limits<double>::infinity();
  for (const auto& r : out.reports)
    out.smallest_single_error = std::min(out.smallest_single_error, r.error_l2 / norm_of(r.direct));
  out.deformation = l2_distance(radii, out.extrapolated.expansion(), other.expansion());

  if (s.n_poles < sorted.size()) {
    const double depth = std::max(s.depth, -sorted[s.n_poles].k.im() + 0.25);
    const Contour wider = enclosing_contour(sorted, s.n_poles + 1, depth, s.k_max, s.density);
    const ExpansionReport more = detail::extrapolated_run(test, sorted.first(s.n_poles + 1), wider, pot, s, opts);
    out.bookkeeping = l2_distance(radii, out.extrapolated.expansion(), more.expansion());
  }

  const QuadRule axis = real_axis_rule(s.k_max, s.real_axis_nodes, [&] {
    std::vector<cplx> hints;
    for (const auto& p : chosen) hints.push_back(p.k.q);
    return hints;
  }());
  out.direct_unregulated = reconstruct_continuum(test, axis, pot, s.mode, radii, 0.0, BraContinuation::upper_rim,
                                                 s.radial_nodes);
  out.regulator_bias = l2_distance(radii, out.extrapolated.direct, out.direct_unregulated);

  if (s.naive_control) {
    ExpansionOptions naive = opts;
    naive.continuation = BraContinuation::naive_conjugate;
    const ExpansionReport a = detail::extrapolated_run(test, chosen, shallow, pot, s, naive);
    const ExpansionReport b = detail::extrapolated_run(test, chosen, deep, pot, s, naive);
    out.naive_deformation = l2_distance(radii, a.expansion(), b.expansion());
  }
  return out;
}

}  // namespace shellres
