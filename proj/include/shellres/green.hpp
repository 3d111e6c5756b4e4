#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "shellres/error.hpp"
#include "shellres/jost.hpp"
#include "shellres/model.hpp"
#include "shellres/quadrature.hpp"

namespace shellres {

enum class Propagator { retarded, advanced };

/// Free Green function -scale * sin(q r<) e^{i q r>} / q; the advanced one is q -> -q.
/// Entire in q apart from the removable point q = 0.
inline cplx g0(double r, double s, const WaveNumber& q, const PotentialSpec& pot,
               Propagator kind = Propagator::retarded) {
  if (std::abs(q.q) <= kMinWaveNumber) throw Error(ErrorCode::InvalidInput, "free Green function needs |q| > 1e-12");
  const cplx k = kind == Propagator::retarded ? q.q : -q.q;
  const double lo = std::min(r, s), hi = std::max(r, s);
  return -pot.scale * std::sin(k * lo) * std::exp(I * k * hi) / k;
}

/// Outgoing solution f+(r;q): e^{iqr} beyond b, continued inward through the
/// shell with the same matching conditions as the regular solution.
class JostSolution {
 public:
  JostSolution(const WaveNumber& q, const PotentialSpec& pot) : q_(q.q), pot_(pot) {
    if (std::abs(q_) <= kMinWaveNumber)
      throw Error(ErrorCode::DegenerateMatch, "outgoing solution needs |q| > 1e-12");
    inner_ = inner_momentum(q, pot);
    degenerate_ = detail::is_degenerate(inner_, pot);
    const cplx f_b = std::exp(I * q_ * pot.b);
    const cplx df_b = I * q_ * f_b;
    cplx f_a, df_a;
    if (degenerate_) {
      lin_value_ = f_b;
      lin_slope_ = df_b;
      f_a = f_b - df_b * pot.width();
      df_a = df_b;
    } else {
      // Anchored at b: f = up e^{iQ(r-b)} + down e^{-iQ(r-b)}.
      shell_up_ = 0.5 * (f_b + df_b / (I * inner_));
      shell_down_ = 0.5 * (f_b - df_b / (I * inner_));
      const cplx grow = std::exp(-I * inner_ * pot.width());
      const cplx decay = std::exp(I * inner_ * pot.width());
      f_a = shell_up_ * grow + shell_down_ * decay;
      df_a = I * inner_ * (shell_up_ * grow - shell_down_ * decay);
    }
    // Anchored at a: f = out e^{iq(r-a)} + in e^{-iq(r-a)}.
    core_out_ = 0.5 * (f_a + df_a / (I * q_));
    core_in_ = 0.5 * (f_a - df_a / (I * q_));
  }

  RadialValue operator()(double r) const {
    if (r > pot_.b) {
      const cplx v = std::exp(I * q_ * r);
      return {v, I * q_ * v, -q_ * q_ * v};
    }
    if (r > pot_.a) {
      if (degenerate_) return {lin_value_ + lin_slope_ * (r - pot_.b), lin_slope_, 0.0};
      const cplx up = shell_up_ * std::exp(I * inner_ * (r - pot_.b));
      const cplx down = shell_down_ * std::exp(-I * inner_ * (r - pot_.b));
      return {up + down, I * inner_ * (up - down), -inner_ * inner_ * (up + down)};
    }
    const cplx out = core_out_ * std::exp(I * q_ * (r - pot_.a));
    const cplx in = core_in_ * std::exp(-I * q_ * (r - pot_.a));
    return {out + in, I * q_ * (out - in), -q_ * q_ * (out + in)};
  }

 private:
  cplx q_;
  PotentialSpec pot_;
  cplx inner_{};
  bool degenerate_ = false;
  cplx shell_up_{}, shell_down_{}, lin_value_{}, lin_slope_{};
  cplx core_out_{}, core_in_{};
};

inline cplx jost_solution(double r, const WaveNumber& q, const PotentialSpec& pot) {
  return JostSolution(q, pot)(r).value;
}

/// W(f, g) = f g' - f' g.
inline cplx wronskian(const RadialValue& f, const RadialValue& g) {
  return f.value * g.derivative - f.derivative * g.value;
}

/// Total Green function chi(r<) f+(r>) scaled by the Wronskian W(f+, chi) = q J+(q).
/// Built once per wave number; poles sit at the zeros of J+.
class TotalGreen {
 public:
  TotalGreen(const WaveNumber& q, const PotentialSpec& pot)
      : coeffs_(match_coeffs(q, pot)), outgoing_(q, pot), pot_(pot) {
    guard_jost_plus(coeffs_);
    factor_ = -pot.scale / (q.q * coeffs_.jplus);
  }

  cplx operator()(double r, double s) const {
    const double lo = std::min(r, s), hi = std::max(r, s);
    return factor_ * regular_solution(lo, coeffs_, pot_) * outgoing_(hi).value;
  }

  const JostCoeffs& coeffs() const { return coeffs_; }

 private:
  JostCoeffs coeffs_;
  JostSolution outgoing_;
  PotentialSpec pot_;
  cplx factor_{};
};

inline cplx g_total(double r, double s, const WaveNumber& q, const PotentialSpec& pot) {
  return TotalGreen(q, pot)(r, s);
}

enum class GreenKind { free_retarded, free_advanced, total };

struct GreenSample {
  double r = 0.0;
  double s = 0.0;
  WaveNumber q;
  cplx value{};
  GreenKind kind = GreenKind::total;
};

inline GreenSample sample_green(GreenKind kind, double r, double s, const WaveNumber& q, const PotentialSpec& pot) {
  cplx v;
  switch (kind) {
    case GreenKind::free_retarded: v = g0(r, s, q, pot, Propagator::retarded); break;
    case GreenKind::free_advanced: v = g0(r, s, q, pot, Propagator::advanced); break;
    case GreenKind::total: v = g_total(r, s, q, pot); break;
  }
  return {r, s, q, v, kind};
}

inline EigenfunctionSample sample_eigenfunction(EigenfunctionKind kind, double r, const WaveNumber& q,
                                                const PotentialSpec& pot) {
  const JostCoeffs c = match_coeffs(q, pot);
  cplx v;
  switch (kind) {
    case EigenfunctionKind::regular: v = regular_solution(r, c, pot); break;
    case EigenfunctionKind::in_ket: v = chi_plus(r, c, pot); break;
    case EigenfunctionKind::out_ket: v = chi_minus(r, c, pot); break;
    case EigenfunctionKind::in_bra: v = left_eigenfunction(r, c, pot, BraKind::in); break;
    case EigenfunctionKind::out_bra: v = left_eigenfunction(r, c, pot, BraKind::out); break;
    case EigenfunctionKind::jost_outgoing: v = JostSolution(q, pot)(r).value; break;
  }
  return {r, v, kind};
}

/// Points on [0, 2b] at which the integral-equation residual is measured;
/// the matching radii are avoided by 1e-9.
inline std::vector<double> residual_grid(const PotentialSpec& pot, std::size_t n = 201) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 2.0 * pot.b * static_cast<double>(i) / static_cast<double>(n - 1);
    if (std::abs(r - pot.a) < 1e-9) r = pot.a + 1e-9;
    if (std::abs(r - pot.b) < 1e-9) r = pot.b + 1e-9;
    grid[i] = r;
  }
  return grid;
}

/// Max over an r-grid of |chi+(r) - sqrt(2/pi) sin(qr) - int_a^b G0+(r,s) V chi+(s) ds|.
/// The shell integral is split at s = r so each piece is smooth.
inline double ls_residual(const WaveNumber& q, const PotentialSpec& pot, std::size_t n_quad = 512) {
  if (n_quad < 64) throw Error(ErrorCode::InvalidInput, "ls_residual needs at least 64 quadrature nodes");
  const JostCoeffs c = match_coeffs(q, pot);
  guard_jost_plus(c);
  const double free_norm = std::sqrt(2.0 / std::numbers::pi);
  double worst = 0.0;
  for (double r : residual_grid(pot)) {
    const QuadRule rule = piecewise_gauss(pot.a, pot.b, {r}, n_quad);
    std::vector<cplx> terms(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double s = rule.nodes[j];
      terms[j] = rule.weights[j] * g0(r, s, q, pot) * pot.v0 * chi_plus(s, c, pot);
    }
    const cplx rhs = free_norm * std::sin(q.q * r) + pairwise_sum(terms);
    worst = std::max(worst, std::abs(chi_plus(r, c, pot) - rhs));
  }
  return worst;
}

}  // namespace shellres
