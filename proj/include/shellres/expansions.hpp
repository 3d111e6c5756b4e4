#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "shellres/error.hpp"
#include "shellres/gamow.hpp"
#include "shellres/jost.hpp"
#include "shellres/model.hpp"
#include "shellres/parallel.hpp"
#include "shellres/poles.hpp"
#include "shellres/quadrature.hpp"

namespace shellres {

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// (r/center)^2 exp(-(r-center)^2 / (2 width^2)) on (0, support], zero beyond.
/// The support must be wide enough that the truncation is below 1e-14.
struct GaussianBump {
  double center = 0.5;
  double width = 0.13;
  double support = 1.6;
};

/// A compactly supported real wave function phi(r), vanishing at r = 0.
class TestFunction {
 public:
  static TestFunction gaussian_bump(double center, double width, double support) {
    if (!(center > 0.0) || !(width > 0.0) || !(support > center))
      throw Error(ErrorCode::InvalidInput, "gaussian bump needs 0 < center < support and width > 0");
    const double edge = (support - center) / width;
    if (0.5 * edge * edge < 32.5)  // exp(-32.5) ~ 7.7e-15
      throw Error(ErrorCode::InvalidInput, "gaussian bump is not negligible at the support edge");
    TestFunction f;
    f.bump_ = GaussianBump{center, width, support};
    f.support_ = support;
    return f;
  }

  /// Uniform samples on [0, step * (n-1)], interpolated by a cubic B-spline.
  static TestFunction sampled(double step, std::vector<double> values) {
    if (values.size() < 4 || !(step > 0.0)) throw Error(ErrorCode::InvalidInput, "sampled test function needs >= 4 samples");
    if (values.front() != 0.0) throw Error(ErrorCode::InvalidInput, "test function must vanish at r = 0");
    TestFunction f;
    f.support_ = step * static_cast<double>(values.size() - 1);
    f.spline_ = std::make_shared<Spline>(values.begin(), values.end(), 0.0, step, 0.0, 0.0);
    return f;
  }

  static TestFunction zero(double support) {
    TestFunction f;
    f.support_ = support;
    f.is_zero_ = true;
    return f;
  }

  double operator()(double r) const {
    if (r <= 0.0 || r > support_ || is_zero_) return 0.0;
    if (bump_) {
      const double t = (r - bump_->center) / bump_->width;
      const double s = r / bump_->center;
      return s * s * std::exp(-0.5 * t * t);
    }
    return (*spline_)(r);
  }

  double support() const { return support_; }
  const std::optional<GaussianBump>& bump() const { return bump_; }

  /// n equally spaced radii in (0, r_max].
  static std::vector<double> uniform_grid(double r_max, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(n);
    return grid;
  }

  std::vector<double> default_grid(std::size_t n = 200) const { return uniform_grid(support_, n); }

 private:
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

  double support_ = 1.0;
  bool is_zero_ = false;
  std::optional<GaussianBump> bump_;
  std::shared_ptr<Spline> spline_;
};

/// Quadrature over the support of phi, split at the shell radii; weights
/// already carry phi(s).
struct RadialProjector {
  std::vector<double> nodes;
  std::vector<double> weighted;

  RadialProjector(const TestFunction& test, const PotentialSpec& pot, std::size_t per_piece = 96) {
    const QuadRule rule = piecewise_gauss(0.0, test.support(), {pot.a, pot.b}, per_piece);
    nodes = rule.nodes;
    weighted.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) weighted[i] = rule.weights[i] * test(rule.nodes[i]);
  }

  /// Integral of chi(s; q) phi(s) ds.
  cplx regular_overlap(const JostCoeffs& c, const PotentialSpec& pot) const {
    std::vector<cplx> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weighted[i] * regular_solution(nodes[i], c, pot);
    return pairwise_sum(terms);
  }

  /// Integral of g(s) phi(s) ds for an arbitrary radial function.
  template <class F>
  cplx overlap(F&& g) const {
    std::vector<cplx> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weighted[i] * g(nodes[i]);
    return pairwise_sum(terms);
  }
};

/// <+q|phi> (kind = in) or <-q|phi> (kind = out): the integral of the left
/// eigenfunction against phi. Entire in q apart from the zeros of J- (in) or J+ (out).
inline cplx project(const TestFunction& test, const WaveNumber& q, const PotentialSpec& pot, BraKind kind,
                    std::size_t per_piece = 96) {
  if (std::abs(q.q) <= kMinWaveNumber) throw Error(ErrorCode::InvalidInput, "projection needs |q| > 1e-12");
  const JostCoeffs c = match_coeffs(q, pot);
  if (kind == BraKind::in) guard_jost_minus(c);
  else guard_jost_plus(c);
  const cplx overlap = RadialProjector(test, pot, per_piece).regular_overlap(c, pot);
  return std::sqrt(2.0 / std::numbers::pi) * overlap / (kind == BraKind::in ? c.jminus : c.jplus);
}

// ---------------------------------------------------------------------------
// Contours
// ---------------------------------------------------------------------------

struct ContourSegment {
  cplx from{};
  cplx to{};
  std::size_t nodes = 256;
};

/// Complex-k nodes q_j with complex weights dq_j.
struct PathRule {
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
};

/// Polyline from the origin side of the positive real axis, through the
/// fourth quadrant, back to the real axis at k_max.
class Contour {
 public:
  explicit Contour(std::vector<ContourSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw Error(ErrorCode::InvalidInput, "contour needs at least one segment");
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i)
      if (std::abs(segments_[i].to - segments_[i + 1].from) > 1e-14)
        throw Error(ErrorCode::InvalidInput, "contour segments must be contiguous");
    const cplx start = segments_.front().from, end = segments_.back().to;
    if (start.imag() != 0.0 || end.imag() != 0.0 || !(start.real() >= 0.0) || !(end.real() > start.real()))
      throw Error(ErrorCode::InvalidInput, "contour must start and end on the positive real axis");
    for (const auto& s : segments_)
      if (s.nodes == 0) throw Error(ErrorCode::InvalidInput, "contour segment without nodes");
  }

  /// (0,0) -> (0,-depth) -> (x_right,-depth) -> (x_right,0) [-> (k_max,0)].
  /// Node counts scale with segment length (`density` per unit length, split
  /// into Gauss-Legendre panels of `panel_nodes`).
  static Contour dip(double depth, double k_max, std::optional<double> x_right = std::nullopt, double density = 64.0,
                     std::size_t panel_nodes = 32) {
    const double right = x_right.value_or(k_max);
    if (!(depth > 0.0) || !(k_max > 0.0) || !(right > 0.0) || right > k_max)
      throw Error(ErrorCode::InvalidInput, "contour needs depth > 0 and 0 < x_right <= k_max");
    std::vector<cplx> vertices = {cplx(0.0, 0.0), cplx(0.0, -depth), cplx(right, -depth), cplx(right, 0.0)};
    if (right < k_max) vertices.emplace_back(k_max, 0.0);
    std::vector<ContourSegment> segs;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      const double len = std::abs(vertices[i + 1] - vertices[i]);
      const std::size_t panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len * density / panel_nodes)));
      for (std::size_t p = 0; p < panels; ++p) {
        const cplx a = vertices[i] + (vertices[i + 1] - vertices[i]) * (static_cast<double>(p) / panels);
        const cplx b = vertices[i] + (vertices[i + 1] - vertices[i]) * (static_cast<double>(p + 1) / panels);
        segs.push_back({a, b, panel_nodes});
      }
    }
    // Panel endpoints are computed independently; snap them together.
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) segs[i + 1].from = segs[i].to;
    return Contour(std::move(segs));
  }

  const std::vector<ContourSegment>& segments() const { return segments_; }
  double k_max() const { return segments_.back().to.real(); }
  double k_min() const { return segments_.front().from.real(); }

  PathRule rule() const {
    PathRule rule;
    for (const auto& s : segments_) {
      const QuadRule& ref = gauss_legendre(s.nodes);
      const cplx half = 0.5 * (s.to - s.from), mid = 0.5 * (s.to + s.from);
      for (std::size_t i = 0; i < s.nodes; ++i) {
        rule.nodes.push_back(mid + half * ref.nodes[i]);
        rule.weights.push_back(half * ref.weights[i]);
      }
    }
    return rule;
  }

  double distance_to(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) {
      const cplx d = s.to - s.from;
      const double t = std::clamp(std::real((z - s.from) * std::conj(d)) / std::norm(d), 0.0, 1.0);
      best = std::min(best, std::abs(z - (s.from + t * d)));
    }
    return best;
  }

  /// The contour followed by the real axis back to its start.
  std::vector<cplx> closed_loop() const {
    std::vector<cplx> loop;
    loop.push_back(segments_.front().from);
    for (const auto& s : segments_) loop.push_back(s.to);
    loop.push_back(segments_.front().from);
    return loop;
  }

  /// Geometric winding of the closed loop around z (nonzero means enclosed).
  int encloses(cplx z) const {
    const auto loop = closed_loop();
    double turn = 0.0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) turn += std::arg((loop[i + 1] - z) / (loop[i] - z));
    return static_cast<int>(std::lround(turn / (2.0 * std::numbers::pi)));
  }

 private:
  std::vector<ContourSegment> segments_;
};

/// Real-axis rule on (0, k_max]: Gauss-Legendre panels of `per_panel` nodes,
/// `nodes` in total, with extra geometric refinement around the real parts of
/// any hinted poles closer to the axis than a panel width.
inline QuadRule real_axis_rule(double k_max, std::size_t nodes, std::span<const cplx> hints = {},
                               std::size_t per_panel = 20) {
  if (!(k_max > 0.0) || nodes < per_panel) throw Error(ErrorCode::InvalidInput, "real-axis rule needs k_max > 0");
  const std::size_t panels = nodes / per_panel;
  const double h = k_max / static_cast<double>(panels);
  std::vector<double> breaks;
  for (std::size_t p = 1; p < panels; ++p) breaks.push_back(h * static_cast<double>(p));
  for (cplx pole : hints) {
    const double x = pole.real(), y = std::max(std::abs(pole.imag()), 1e-8);
    if (x <= 0.0 || x >= k_max || y >= h) continue;
    for (double d = y; d < h; d *= 2.0) {
      breaks.push_back(x - d);
      breaks.push_back(x + d);
    }
    breaks.push_back(x);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double u, double v) { return std::abs(u - v) < 1e-12; }),
               breaks.end());
  return piecewise_gauss(0.0, k_max, breaks, per_panel);
}

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

/// Which completeness relation: int |k+><+k|, int |k-><-k|, or int |k-> S <+k|.
enum class ExpansionMode { in_in, out_out, out_in };

/// How the bras and kets are carried off the real axis. `upper_rim` continues
/// every eigenfunction analytically from its positive-axis values.
/// `naive_conjugate` replaces each object the naive picture puts on the lower
/// rim (the <+| bra and the |-> ket) by the complex conjugate of its upper-rim
/// partner, which agrees on the real axis but is not analytic off it.
enum class BraContinuation { upper_rim, naive_conjugate };

inline std::string_view mode_name(ExpansionMode mode) {
  switch (mode) {
    case ExpansionMode::in_in: return "in-in";
    case ExpansionMode::out_out: return "out-out";
    case ExpansionMode::out_in: return "out-in";
  }
  return "?";
}

struct ExpansionOptions {
  std::vector<double> radii;          // output grid; empty means test.default_grid()
  std::optional<QuadRule> real_axis;  // rule for the direct reconstruction
  std::size_t real_axis_nodes = 4000;
  std::size_t radial_nodes = 96;      // per piece of the test-function support
  BraContinuation continuation = BraContinuation::upper_rim;
  bool check_enclosure = true;
};

struct ExpansionReport {
  ExpansionMode mode = ExpansionMode::in_in;
  BraContinuation continuation = BraContinuation::upper_rim;
  std::vector<double> radii;
  std::vector<cplx> pole_k;
  std::vector<std::vector<cplx>> pole_terms;  // [pole][radius]
  std::vector<cplx> gamow_sum;
  std::vector<cplx> background;
  std::vector<cplx> direct;
  std::vector<double> alphas;
  double error_l2 = 0.0;
  double error_max = 0.0;
  bool extrapolated = false;
  bool monotone = true;

  std::vector<cplx> expansion() const {
    std::vector<cplx> out(radii.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = gamow_sum[i] + background[i];
    return out;
  }
};

/// Trapezoid-weighted L2 norm of samples on (0, r_max], with the grid's first
/// point connected to r = 0 where every test function vanishes.
inline double l2_norm(std::span<const double> radii, std::span<const cplx> values,
                      double r_max = std::numeric_limits<double>::infinity()) {
  double acc = 0.0, prev_r = 0.0, prev_v = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] > r_max) break;
    const double v = std::norm(values[i]);
    acc += 0.5 * (radii[i] - prev_r) * (v + prev_v);
    prev_r = radii[i];
    prev_v = v;
  }
  return std::sqrt(acc);
}

inline double l2_distance(std::span<const double> radii, std::span<const cplx> x, std::span<const cplx> y,
                          double r_max = std::numeric_limits<double>::infinity()) {
  std::vector<cplx> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return l2_norm(radii, diff, r_max);
}

inline double max_distance(std::span<const cplx> x, std::span<const cplx> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

namespace detail {

// One quadrature node of the k-integral: everything that does not depend on r.
struct KNode {
  JostCoeffs coeffs;
  cplx weight{};   // dq * regulator * bra factor (incl. S for out-in)
  bool conj_ket = false;
  bool ket_plus = true;  // chi+ ket (in-in) versus chi- ket
};

inline cplx regulator(cplx q, double alpha, const PotentialSpec& pot) {
  return alpha == 0.0 ? cplx(1.0) : std::exp(-I * alpha * q * q / pot.scale);
}

inline KNode make_knode(cplx q, cplx dq, double alpha, ExpansionMode mode, BraContinuation cont,
                        const RadialProjector& proj, const PotentialSpec& pot) {
  KNode node;
  node.coeffs = match_coeffs(WaveNumber(q), pot);
  const JostCoeffs& c = node.coeffs;
  guard_jost_plus(c);
  guard_jost_minus(c);
  const cplx pref = std::sqrt(2.0 / std::numbers::pi);
  const cplx overlap = proj.regular_overlap(c, pot);
  const cplx bra_out = pref * overlap / c.jplus;  // <-q|phi>
  const bool naive = cont == BraContinuation::naive_conjugate;
  const cplx bra_in = naive ? std::conj(bra_out) : pref * overlap / c.jminus;  // <+q|phi>
  cplx bra;
  switch (mode) {
    case ExpansionMode::in_in:
      bra = bra_in;
      node.ket_plus = true;
      break;
    case ExpansionMode::out_out:
      bra = bra_out;
      node.ket_plus = false;
      node.conj_ket = naive;
      break;
    case ExpansionMode::out_in:
      bra = s_matrix(c) * bra_in;
      node.ket_plus = false;
      node.conj_ket = naive;
      break;
  }
  node.weight = dq * regulator(q, alpha, pot) * bra;
  return node;
}

inline cplx ket_value(double r, const KNode& node, const PotentialSpec& pot) {
  const JostCoeffs& c = node.coeffs;
  const double pref = std::sqrt(2.0 / std::numbers::pi);
  const cplx chi = regular_solution(r, c, pot);
  if (node.conj_ket) return std::conj(pref * chi / c.jplus);
  return pref * chi / (node.ket_plus ? c.jplus : c.jminus);
}

// sum_j ket(r, q_j) * weight_j at every radius; fixed summation order.
inline std::vector<cplx> integrate_path(std::span<const cplx> qs, std::span<const cplx> dqs, double alpha,
                                        ExpansionMode mode, BraContinuation cont, const RadialProjector& proj,
                                        std::span<const double> radii, const PotentialSpec& pot) {
  std::vector<KNode> nodes(qs.size());
  parallel_for(qs.size(), [&](std::size_t j) { nodes[j] = make_knode(qs[j], dqs[j], alpha, mode, cont, proj, pot); });
  std::vector<cplx> out(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    std::vector<cplx> terms(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) terms[j] = ket_value(radii[i], nodes[j], pot) * nodes[j].weight;
    out[i] = pairwise_sum(terms);
  });
  return out;
}

}  // namespace detail

/// phi_rec(r) = int dk e^{-i alpha k^2/scale} ket(r;k) [S(k)] bra(k) over the given real-k rule.
inline std::vector<cplx> reconstruct_continuum(const TestFunction& test, const QuadRule& k_grid,
                                               const PotentialSpec& pot, ExpansionMode mode,
                                               std::span<const double> radii, double alpha = 0.0,
                                               BraContinuation cont = BraContinuation::upper_rim,
                                               std::size_t radial_nodes = 96) {
  for (double k : k_grid.nodes)
    if (!(k > 0.0)) throw Error(ErrorCode::InvalidInput, "continuum grid must lie in (0, k_max]");
  std::vector<cplx> qs(k_grid.nodes.begin(), k_grid.nodes.end());
  std::vector<cplx> dqs(k_grid.weights.begin(), k_grid.weights.end());
  const RadialProjector proj(test, pot, radial_nodes);
  return detail::integrate_path(qs, dqs, alpha, mode, cont, proj, radii, pot);
}

/// Per-pole contribution -2 pi i Res[...] at k_n, times e^{-i alpha z_n}, on the radii.
inline std::vector<cplx> pole_term(const ResonancePole& pole, const TestFunction& test, double alpha,
                                   const PotentialSpec& pot, ExpansionMode mode, BraContinuation cont,
                                   std::span<const double> radii, std::size_t radial_nodes = 96) {
  const RadialProjector proj(test, pot, radial_nodes);
  const cplx reg = detail::regulator(pole.k.q, alpha, pot);
  std::vector<cplx> out(radii.size());
  if (cont == BraContinuation::naive_conjugate) {
    // Each lower-rim object is the Hermitian conjugate of its Gamow partner.
    const GamowState u = gamow_state(pole, pot);
    const bool conj_bra = mode != ExpansionMode::out_out;
    const bool conj_ket = mode != ExpansionMode::in_in;
    const cplx bra = proj.overlap([&](double s) {
      const cplx v = u.value(s, pot);
      return conj_bra ? std::conj(v) : v;
    });
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const cplx ket = u.value(radii[i], pot);
      out[i] = reg * (conj_ket ? std::conj(ket) : ket) * bra;
    }
    return out;
  }
  // Upper-rim continuation. The pole sits in chi+ (in-in), in <-k| (out-out)
  // or in S (out-in); in each case the residue is
  //   res S * chi-(r;k_n) * <+k_n|phi>.
  const JostCoeffs c = match_coeffs(pole.k, pot);
  const cplx pref = std::sqrt(2.0 / std::numbers::pi);
  const cplx bra_in = pref * proj.regular_overlap(c, pot) / c.jminus;
  const cplx factor = -2.0 * std::numbers::pi * I * reg * pole.residue_s * bra_in;
  for (std::size_t i = 0; i < radii.size(); ++i)
    out[i] = factor * pref * regular_solution(radii[i], c, pot) / c.jminus;
  return out;
}

/// Gamow sum over the listed poles plus the background integral along the
/// contour, compared with the regulated real-axis reconstruction.
inline ExpansionReport resonance_expansion(const TestFunction& test, std::span<const ResonancePole> poles,
                                           const Contour& contour, double alpha, const PotentialSpec& pot,
                                           ExpansionMode mode, const ExpansionOptions& opts = {}) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::AlphaNegative, "regulator parameter must be non-negative");
  for (const auto& p : poles) {
    if (contour.distance_to(p.k.q) < 1e-4) throw Error(ErrorCode::ContourTooClose, "pole within 1e-4 of the contour");
    if (contour.encloses(p.k.q) != 1) throw Error(ErrorCode::EnclosedPoleMismatch, "listed pole outside the contour");
  }
  if (opts.check_enclosure) {
    auto loop = contour.closed_loop();
    // J+ is undefined at q = Q = 0 (free particle); step off the origin.
    for (auto& z : loop)
      if (std::abs(z) < 1e-9) z = cplx(1e-9, 0.0);
    const double w = winding_number(loop, pot, 32);
    if (std::lround(w) != static_cast<long>(poles.size()))
      throw Error(ErrorCode::EnclosedPoleMismatch, "contour encloses a different number of resonances than listed");
  }

  ExpansionReport report;
  report.mode = mode;
  report.continuation = opts.continuation;
  report.alphas = {alpha};
  report.radii = opts.radii.empty() ? test.default_grid() : opts.radii;
  const auto& radii = report.radii;

  report.gamow_sum.assign(radii.size(), cplx{});
  for (const auto& p : poles) {
    report.pole_k.push_back(p.k.q);
    report.pole_terms.push_back(pole_term(p, test, alpha, pot, mode, opts.continuation, radii, opts.radial_nodes));
    for (std::size_t i = 0; i < radii.size(); ++i) report.gamow_sum[i] += report.pole_terms.back()[i];
  }

  const RadialProjector proj(test, pot, opts.radial_nodes);
  const PathRule path = contour.rule();
  report.background =
      detail::integrate_path(path.nodes, path.weights, alpha, mode, opts.continuation, proj, radii, pot);

  std::vector<cplx> hints;
  for (const auto& p : poles) hints.push_back(p.k.q);
  const QuadRule axis = opts.real_axis ? *opts.real_axis : real_axis_rule(contour.k_max(), opts.real_axis_nodes, hints);
  report.direct = reconstruct_continuum(test, axis, pot, mode, radii, alpha, opts.continuation, opts.radial_nodes);

  const auto total = report.expansion();
  report.error_l2 = l2_distance(radii, total, report.direct);
  report.error_max = max_distance(total, report.direct);
  return report;
}

namespace detail {

// Lagrange weights for evaluating the interpolant through (alphas, f) at 0.
inline std::vector<double> extrapolation_weights(std::span<const double> alphas) {
  std::vector<double> w(alphas.size(), 1.0);
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = 0; j < alphas.size(); ++j)
      if (i != j) w[i] *= (0.0 - alphas[j]) / (alphas[i] - alphas[j]);
  return w;
}

inline std::vector<cplx> combine(std::span<const double> w, const std::vector<const std::vector<cplx>*>& series) {
  std::vector<cplx> out(series.front()->size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    cplx acc{};
    for (std::size_t s = 0; s < series.size(); ++s) acc += w[s] * (*series[s])[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace detail

/// Relative error growth tolerated by the monotonicity check of alpha_extrapolate.
inline constexpr double kMonotoneFloor = 1e-12;

/// Richardson (polynomial) extrapolation alpha -> 0 of every sample series.
/// The reports must share mode, radii and poles. `monotone` records whether
/// the error shrinks as alpha decreases; with `strict` a violation throws.
inline ExpansionReport alpha_extrapolate(std::span<const ExpansionReport> reports, bool strict = false) {
  if (reports.size() < 2) throw Error(ErrorCode::ArityTooSmall, "extrapolation needs several reports");
  const ExpansionReport& first = reports.front();
  for (const auto& r : reports) {
    if (r.mode != first.mode || r.radii != first.radii || r.pole_k != first.pole_k || r.alphas.size() != 1)
      throw Error(ErrorCode::InvalidInput, "reports differ in mode, grid or poles");
  }
  const bool identical = std::all_of(reports.begin(), reports.end(), [&](const ExpansionReport& r) {
    return r.alphas == first.alphas && r.gamow_sum == first.gamow_sum && r.background == first.background &&
           r.direct == first.direct;
  });
  if (identical) {
    ExpansionReport out = first;
    out.extrapolated = true;
    return out;
  }
  if (reports.size() < 3) throw Error(ErrorCode::ArityTooSmall, "extrapolation needs at least three alphas");

  std::vector<const ExpansionReport*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->alphas[0] > y->alphas[0]; });
  std::vector<double> alphas;
  for (auto* r : order) alphas.push_back(r->alphas[0]);
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
    if (!(alphas[i] > alphas[i + 1])) throw Error(ErrorCode::InvalidInput, "regulator values must be distinct");

  // Growth below the roundoff floor of the reconstruction does not count.
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const double floor = kMonotoneFloor * l2_norm(order[i + 1]->radii, order[i + 1]->direct);
    if (order[i + 1]->error_l2 > order[i]->error_l2 + floor) monotone = false;
  }
  if (strict && !monotone) throw Error(ErrorCode::NonMonotone, "expansion error grows as alpha decreases");

  const auto w = detail::extrapolation_weights(alphas);
  auto series = [&](auto member) {
    std::vector<const std::vector<cplx>*> s;
    for (auto* r : order) s.push_back(&(r->*member));
    return detail::combine(w, s);
  };

  ExpansionReport out;
  out.mode = first.mode;
  out.continuation = first.continuation;
  out.radii = first.radii;
  out.pole_k = first.pole_k;
  out.alphas = alphas;
  out.gamow_sum = series(&ExpansionReport::gamow_sum);
  out.background = series(&ExpansionReport::background);
  out.direct = series(&ExpansionReport::direct);
  for (std::size_t p = 0; p < first.pole_terms.size(); ++p) {
    std::vector<const std::vector<cplx>*> s;
    for (auto* r : order) s.push_back(&r->pole_terms[p]);
    out.pole_terms.push_back(detail::combine(w, s));
  }
  const auto total = out.expansion();
  out.error_l2 = l2_distance(out.radii, total, out.direct);
  out.error_max = max_distance(total, out.direct);
  out.extrapolated = true;
  out.monotone = monotone;
  return out;
}

}  // namespace shellres
