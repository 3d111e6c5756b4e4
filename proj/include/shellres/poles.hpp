#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "shellres/error.hpp"
#include "shellres/jost.hpp"
#include "shellres/model.hpp"
#include "shellres/quadrature.hpp"

namespace shellres {

/// Axis-aligned rectangle of the k-plane.
struct SearchRegion {
  double re_min = 0.0, re_max = 8.0;
  double im_min = -3.0, im_max = 0.0;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diagonal() const { return std::hypot(width(), height()); }
  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }

  bool contains(cplx k, double margin = 0.0) const {
    return k.real() >= re_min - margin && k.real() <= re_max + margin && k.imag() >= im_min - margin &&
           k.imag() <= im_max + margin;
  }

  SearchRegion grown(double delta) const { return {re_min - delta, re_max + delta, im_min - delta, im_max + delta}; }
};

inline void validate_region(const SearchRegion& region) {
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
    throw Error(ErrorCode::InvalidInput, "search region must have re_min < re_max and im_min < im_max");
}

/// A zero of J+ in the fourth quadrant: a pole of S on the lower half of the second sheet.
struct ResonancePole {
  WaveNumber k;
  ComplexEnergy z;
  cplx residue_s{};
  cplx n_sq{};  // i * res S
  double newton_error = 0.0;
  int merged = 0;  // number of duplicate Newton hits folded into this pole

  double energy() const { return z.z.real(); }
  double width() const { return -2.0 * z.z.imag(); }
};

/// The time-reversal partner at -conj(k_n).
struct AntiResonancePole {
  WaveNumber k;
  ComplexEnergy z;
  cplx residue_s{};
  cplx m_sq{};
};

namespace detail {

inline constexpr double kMaxPhaseStep = 0.5;

// Argument change of J+ along the straight segment z0 -> z1, bisected until
// every sub-step turns by less than kMaxPhaseStep and the modulus ratio stays tame.
class PhaseWalker {
 public:
  PhaseWalker(const PotentialSpec& pot, double min_length) : pot_(pot), min_length_(min_length) {}

  cplx eval(cplx z) const {
    cplx f;
    try {
      f = jost_plus(WaveNumber(z), pot_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMatch) throw;
      throw Error(ErrorCode::BoundaryZero, "J+ undefined on the path (q = Q = 0)");
    }
    if (f == cplx{} || !std::isfinite(std::abs(f))) throw Error(ErrorCode::BoundaryZero, "J+ vanishes on the path");
    return f;
  }

  double path(std::span<const cplx> vertices, std::size_t per_edge) const {
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < vertices.size(); ++e) {
      const cplx from = vertices[e], to = vertices[e + 1];
      if (from == to) continue;
      cplx z0 = from, f0 = eval(z0);
      for (std::size_t i = 1; i <= per_edge; ++i) {
        const cplx z1 = from + (to - from) * (static_cast<double>(i) / static_cast<double>(per_edge));
        const cplx f1 = eval(z1);
        total += segment(z0, f0, z1, f1, 0);
        z0 = z1;
        f0 = f1;
      }
    }
    return total;
  }

 private:
  double segment(cplx z0, cplx f0, cplx z1, cplx f1, int depth) const {
    const cplx ratio = f1 / f0;
    const double turn = std::arg(ratio);
    const double stretch = std::abs(std::log(std::abs(ratio)));
    if (std::abs(turn) <= kMaxPhaseStep && stretch <= 1.0) return turn;
    if (depth > 60 || std::abs(z1 - z0) < min_length_)
      throw Error(ErrorCode::BoundaryZero, "phase of J+ unresolved near the path");
    const cplx zm = 0.5 * (z0 + z1);
    const cplx fm = eval(zm);
    return segment(z0, f0, zm, fm, depth + 1) + segment(zm, fm, z1, f1, depth + 1);
  }

  const PotentialSpec& pot_;
  double min_length_;
};

inline std::array<cplx, 5> rectangle_path(const SearchRegion& r) {
  return {cplx(r.re_min, r.im_min), cplx(r.re_max, r.im_min), cplx(r.re_max, r.im_max), cplx(r.re_min, r.im_max),
          cplx(r.re_min, r.im_min)};
}

}  // namespace detail

/// Winding number of J+ along a closed polyline (last vertex == first), not rounded.
inline double winding_number(std::span<const cplx> closed_path, const PotentialSpec& pot, std::size_t per_edge = 64) {
  double extent = 0.0;
  for (std::size_t i = 0; i + 1 < closed_path.size(); ++i) extent += std::abs(closed_path[i + 1] - closed_path[i]);
  const detail::PhaseWalker walker(pot, 1e-10 * std::max(extent, 1e-300));
  return walker.path(closed_path, per_edge) / (2.0 * std::numbers::pi);
}

/// Number of zeros of J+ inside the rectangle (argument principle).
/// Resolution is doubled until the winding is within 0.05 of an integer; a
/// zero sitting on the boundary triggers small outward/inward perturbations.
inline int count_zeros(const SearchRegion& region, const PotentialSpec& pot, std::size_t n_boundary = 64) {
  validate_region(region);
  if (n_boundary == 0) throw Error(ErrorCode::InvalidInput, "n_boundary must be positive");
  static constexpr std::array<double, 5> kNudges = {0.0, 1e-6, -1e-6, 3.7e-6, -3.7e-6};
  for (double nudge : kNudges) {
    const SearchRegion rect = region.grown(nudge * region.diagonal());
    const auto path = detail::rectangle_path(rect);
    try {
      std::size_t per_edge = n_boundary;
      for (int attempt = 0; attempt < 4; ++attempt, per_edge *= 2) {
        const double w = winding_number(path, pot, per_edge);
        const double nearest = std::round(w);
        if (std::abs(w - nearest) <= 0.05) return static_cast<int>(nearest);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryZero) throw;
    }
  }
  std::ostringstream msg;
  msg << "winding number did not stabilize on [" << region.re_min << ", " << region.re_max << "] x ["
      << region.im_min << ", " << region.im_max << "]";
  throw Error(ErrorCode::BoundaryZero, msg.str());
}

/// res S at a zero of J+: J-(k) / J+'(k).
inline cplx residue_s(const WaveNumber& k, const PotentialSpec& pot) {
  const auto [jplus, djplus] = jost_plus_with_derivative(k, pot);
  if (!(std::abs(jplus) <= 1e-8)) throw Error(ErrorCode::NotAPole, "J+ does not vanish at the given wave number");
  return jost_minus(k, pot) / djplus;
}

/// (1/2 pi i) times the integral of S around a small circle centered at k (trapezoid rule).
inline cplx residue_s_contour(const WaveNumber& k, const PotentialSpec& pot, double radius = 1e-4,
                              std::size_t nodes = 64) {
  std::vector<cplx> terms(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const cplx offset = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes));
    terms[j] = s_matrix(WaveNumber(k.q + offset), pot) * offset;
  }
  return pairwise_sum(terms) / static_cast<double>(nodes);
}

struct SearchOptions {
  std::size_t n_boundary = 64;
  int max_depth = 14;
  int max_newton = 80;
  double dedup = 1e-6;
};

namespace detail {

struct NewtonResult {
  cplx k{};
  double last_step = 0.0;
  bool converged = false;
};

inline NewtonResult newton_jost(cplx start, const PotentialSpec& pot, double tol, int max_iter, double escape) {
  cplx k = start;
  for (int it = 0; it < max_iter; ++it) {
    const auto [f, df] = jost_plus_with_derivative(WaveNumber(k), pot);
    if (df == cplx{}) return {k, 0.0, false};
    const cplx step = f / df;
    k -= step;
    if (!std::isfinite(std::abs(k)) || std::abs(k - start) > escape) return {k, std::abs(step), false};
    if (std::abs(step) < tol) return {k, std::abs(step), true};
  }
  return {k, 0.0, false};
}

inline std::array<SearchRegion, 4> quadrisect(const SearchRegion& r) {
  // Off-center split points keep cell edges away from symmetric zero sets.
  const double xm = r.re_min + 0.5137 * r.width();
  const double ym = r.im_min + 0.4871 * r.height();
  return {SearchRegion{r.re_min, xm, r.im_min, ym}, SearchRegion{xm, r.re_max, r.im_min, ym},
          SearchRegion{r.re_min, xm, ym, r.im_max}, SearchRegion{xm, r.re_max, ym, r.im_max}};
}

}  // namespace detail

inline ResonancePole make_resonance(const WaveNumber& k, const PotentialSpec& pot, double newton_error) {
  ResonancePole pole;
  pole.k = k;
  pole.z = energy_from_k(k, pot);
  pole.residue_s = residue_s(k, pot);
  pole.n_sq = I * pole.residue_s;
  pole.newton_error = newton_error;
  return pole;
}

/// Resonance poles (zeros of J+) in a fourth-quadrant region, sorted by Re k.
inline std::vector<ResonancePole> find_resonances(const SearchRegion& region, const PotentialSpec& pot,
                                                  double tol = 1e-12, const SearchOptions& opts = {}) {
  validate_region(region);
  if (region.im_max > 0.0 || region.re_min < 0.0)
    throw Error(ErrorCode::InvalidInput, "resonance search region must lie in the fourth quadrant");
  if (!(tol >= 1e-13)) throw Error(ErrorCode::InvalidInput, "Newton tolerance must be at least 1e-13");

  struct Cell {
    SearchRegion rect;
    int count;
    int depth;
  };
  struct Hit {
    cplx k;
    double step;
  };
  std::vector<Hit> hits;
  std::vector<Cell> stack{{region, count_zeros(region, pot, opts.n_boundary), 0}};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    if (cell.count <= 0) continue;
    if (cell.count == 1) {
      const auto res = detail::newton_jost(cell.rect.center(), pot, tol, opts.max_newton, 2.0 * cell.rect.diagonal());
      if (res.converged && cell.rect.contains(res.k, 1e-3 * cell.rect.diagonal())) {
        hits.push_back({res.k, res.last_step});
        continue;
      }
    }
    if (cell.depth >= opts.max_depth) {
      std::ostringstream msg;
      msg << "cell [" << cell.rect.re_min << ", " << cell.rect.re_max << "] x [" << cell.rect.im_min << ", "
          << cell.rect.im_max << "] holds " << cell.count << " zero(s) but Newton did not converge";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
    for (const auto& child : detail::quadrisect(cell.rect))
      stack.push_back({child, count_zeros(child, pot, opts.n_boundary), cell.depth + 1});
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    return x.k.real() != y.k.real() ? x.k.real() < y.k.real() : x.k.imag() < y.k.imag();
  });
  std::vector<ResonancePole> poles;
  for (const Hit& h : hits) {
    if (!region.contains(h.k)) continue;
    if (!poles.empty() && std::abs(poles.back().k.q - h.k) < opts.dedup) {
      ++poles.back().merged;
      continue;
    }
    const auto [jplus, djplus] = jost_plus_with_derivative(WaveNumber(h.k), pot);
    if (std::abs(djplus) <= 1e-10)
      throw Error(ErrorCode::NonConvergence, "zero of J+ is not simple");
    if (std::abs(jplus) > 1e-10 * std::abs(jost_minus(WaveNumber(h.k), pot)))
      throw Error(ErrorCode::NonConvergence, "Newton iterate does not annihilate J+");
    poles.push_back(make_resonance(WaveNumber(h.k), pot, h.step));
  }
  return poles;
}

/// Anti-resonance at -conj(k_n), with the two checks that would expose a
/// broken reality assumption.
inline AntiResonancePole pair_antiresonance(const ResonancePole& pole, const PotentialSpec& pot) {
  AntiResonancePole anti;
  anti.k = pole.k.reflected();
  anti.z = energy_from_k(anti.k, pot);
  try {
    anti.residue_s = residue_s(anti.k, pot);
  } catch (const Error&) {
    throw Error(ErrorCode::PairingViolation, "-conj(k_n) is not a zero of J+");
  }
  anti.m_sq = I * anti.residue_s;
  const cplx probe = s_matrix(WaveNumber(anti.k.q + 1e-6), pot);
  if (!(std::abs(probe) > 1e4)) throw Error(ErrorCode::PairingViolation, "S is not singular at -conj(k_n)");
  if (!(std::abs(anti.m_sq - std::conj(pole.n_sq)) <= 1e-8 * std::abs(pole.n_sq)))
    throw Error(ErrorCode::PairingViolation, "M_n^2 differs from conj(N_n^2)");
  return anti;
}

}  // namespace shellres
