#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "shellres/error.hpp"
#include "shellres/jost.hpp"
#include "shellres/model.hpp"
#include "shellres/poles.hpp"

namespace shellres {

/// Piecewise eigensolution at a pole of S:
///   norm * sin(k r) / J3                 0 < r < a
///   norm * (J1 e^{iQr} + J2 e^{-iQr}) / J3   a < r < b
///   norm * e^{ikr}                       b < r
/// For an anti-resonance k = -conj(k_n) and the tail e^{ikr} is purely incoming.
struct GamowState {
  WaveNumber k;
  ComplexEnergy z;
  bool anti = false;
  cplx norm_sq{};  // N_n^2 or M_n^2
  cplx norm{};     // principal square root of norm_sq
  cplx inner{};    // Q at k
  cplx core{};     // 1/J3
  cplx shell_up{};    // J1/J3 (or the constant term when degenerate)
  cplx shell_down{};  // J2/J3 (or the slope when degenerate)
  bool degenerate = false;

  RadialValue piece(Piece which, double r) const {
    const cplx q = k.q;
    RadialValue u;
    switch (which) {
      case Piece::core: {
        const cplx v = core * std::sin(q * r);
        u = {v, core * q * std::cos(q * r), -q * q * v};
        break;
      }
      case Piece::shell:
        if (degenerate) {
          u = {shell_up + shell_down * r, shell_down, 0.0};
        } else {
          const cplx up = shell_up * std::exp(I * inner * r);
          const cplx down = shell_down * std::exp(-I * inner * r);
          u = {up + down, I * inner * (up - down), -inner * inner * (up + down)};
        }
        break;
      case Piece::tail: {
        const cplx v = std::exp(I * q * r);
        u = {v, I * q * v, -q * q * v};
        break;
      }
    }
    u.value *= norm;
    u.derivative *= norm;
    u.second *= norm;
    return u;
  }

  RadialValue operator()(double r, const PotentialSpec& pot) const { return piece(piece_at(r, pot), r); }

  cplx value(double r, const PotentialSpec& pot) const { return (*this)(r, pot).value; }
};

namespace detail {

inline GamowState build_gamow(const WaveNumber& k, cplx norm_sq, bool anti, const PotentialSpec& pot) {
  const JostCoeffs c = match_coeffs(k, pot);
  if (!(std::abs(c.j3) > 1e-12)) throw Error(ErrorCode::J3Vanishes, "J3 vanishes at the pole");
  GamowState s;
  s.k = k;
  s.z = energy_from_k(k, pot);
  s.anti = anti;
  s.norm_sq = norm_sq;
  s.norm = std::sqrt(norm_sq);
  s.inner = c.inner;
  s.core = 1.0 / c.j3;
  s.shell_up = c.j1 / c.j3;
  s.shell_down = c.j2 / c.j3;
  s.degenerate = c.degenerate;
  return s;
}

}  // namespace detail

inline GamowState gamow_state(const ResonancePole& pole, const PotentialSpec& pot) {
  return detail::build_gamow(pole.k, pole.n_sq, false, pot);
}

inline GamowState antiresonance_state(const AntiResonancePole& anti, const PotentialSpec& pot) {
  return detail::build_gamow(anti.k, anti.m_sq, true, pot);
}

/// max |-(1/scale) u'' + V u - z u| / max |u| over n_grid points of (0, 2b],
/// skipping the matching radii by 1e-9.
inline double schrodinger_residual(const GamowState& state, const PotentialSpec& pot, std::size_t n_grid = 400) {
  if (n_grid < 100) throw Error(ErrorCode::InvalidInput, "schrodinger_residual needs at least 100 grid points");
  double worst = 0.0, biggest = 0.0;
  for (std::size_t i = 1; i <= n_grid; ++i) {
    double r = 2.0 * pot.b * static_cast<double>(i) / static_cast<double>(n_grid);
    if (std::abs(r - pot.a) < 1e-9) r = pot.a - 1e-9;
    if (std::abs(r - pot.b) < 1e-9) r = pot.b - 1e-9;
    const RadialValue u = state(r, pot);
    const cplx lhs = -u.second / pot.scale + pot.at(r) * u.value - state.z.z * u.value;
    worst = std::max(worst, std::abs(lhs));
    biggest = std::max(biggest, std::abs(u.value));
  }
  return biggest > 0.0 ? worst / biggest : worst;
}

/// max over r in (b, 3b] of |u(r) e^{-ikr} - norm| / |norm|: zero for a purely
/// outgoing (resonance) or purely incoming (anti-resonance) tail.
inline double tail_impurity(const GamowState& state, const PotentialSpec& pot, std::size_t n = 50) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = pot.b + 2.0 * pot.b * static_cast<double>(i) / static_cast<double>(n);
    const cplx ratio = state.value(r, pot) * std::exp(-I * state.k.q * r);
    worst = std::max(worst, std::abs(ratio - state.norm) / std::abs(state.norm));
  }
  return worst;
}

/// Largest relative jump of u or u' across r = a and r = b.
inline double matching_defect(const GamowState& state, const PotentialSpec& pot) {
  return std::max(detail::junction_defect(state.piece(Piece::core, pot.a), state.piece(Piece::shell, pot.a)),
                  detail::junction_defect(state.piece(Piece::shell, pot.b), state.piece(Piece::tail, pot.b)));
}

struct PhaseFit {
  cplx phase{};       // c minimizing sum |anti - c conj(res)|^2
  double residual = 0.0;  // relative L2 misfit
};

/// Fits u_anti(r) ~ c * conj(u_res(r)) on the given radii.
inline PhaseFit time_reversal_fit(const GamowState& res, const GamowState& anti, const PotentialSpec& pot,
                                  std::span<const double> radii) {
  cplx cross{};
  double norm_res = 0.0, norm_anti = 0.0;
  std::vector<cplx> a(radii.size()), b(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    a[i] = anti.value(radii[i], pot);
    b[i] = std::conj(res.value(radii[i], pot));
    cross += std::conj(b[i]) * a[i];
    norm_res += std::norm(b[i]);
    norm_anti += std::norm(a[i]);
  }
  PhaseFit fit;
  fit.phase = cross / norm_res;
  double misfit = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) misfit += std::norm(a[i] - fit.phase * b[i]);
  fit.residual = std::sqrt(misfit / norm_anti);
  return fit;
}

}  // namespace shellres
