#pragma once

#include <cmath>
#include <complex>

#include "shellres/error.hpp"

namespace shellres {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Spherical shell potential: V = v0 on a < r < b, zero elsewhere.
/// `scale` is the constant 2m/hbar^2, so that E = q^2 / scale.
struct PotentialSpec {
  double v0 = 0.0;
  double a = 1.0;
  double b = 2.0;
  double scale = 1.0;

  double at(double r) const { return (r > a && r < b) ? v0 : 0.0; }
  double width() const { return b - a; }
};

inline PotentialSpec make_potential(double v0, double a, double b, double scale = 1.0) {
  if (!std::isfinite(v0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(scale))
    throw Error(ErrorCode::InvalidInput, "potential parameters must be finite");
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidInput, "scale must be positive");
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "inner radius must be positive");
  if (!(b > a)) throw Error(ErrorCode::OrderedRadii, "outer radius must exceed inner radius");
  return PotentialSpec{v0, a, b, scale};
}

/// A point of the complex wave-number plane. The whole plane is admitted; it
/// is the single-valued parameterization of the two-sheeted energy surface.
struct WaveNumber {
  cplx q{};

  constexpr WaveNumber() = default;
  constexpr explicit WaveNumber(cplx value) : q(value) {}
  constexpr explicit WaveNumber(double value) : q(value, 0.0) {}

  constexpr cplx value() const { return q; }
  double re() const { return q.real(); }
  double im() const { return q.imag(); }
  WaveNumber operator-() const { return WaveNumber(-q); }
  WaveNumber reflected() const { return WaveNumber(-std::conj(q)); }
  friend bool operator==(const WaveNumber&, const WaveNumber&) = default;
};

enum class Sheet { first, second };

/// Energy z = q^2/scale together with the Riemann sheet the wave number maps to.
/// The sheet tag is metadata; no computation depends on it.
struct ComplexEnergy {
  cplx z{};
  Sheet sheet = Sheet::first;
};

inline Sheet sheet_of(const WaveNumber& q) {
  // Upper half k-plane (and the positive real axis, the upper rim of the cut)
  // is the physical sheet.
  if (q.im() > 0.0 || (q.im() == 0.0 && q.re() > 0.0)) return Sheet::first;
  return Sheet::second;
}

inline ComplexEnergy energy_from_k(const WaveNumber& q, const PotentialSpec& pot) {
  return ComplexEnergy{q.q * q.q / pot.scale, sheet_of(q)};
}

/// Wave number inside the shell, sqrt(q^2 - scale*v0), principal branch.
inline cplx inner_momentum(const WaveNumber& q, const PotentialSpec& pot) {
  cplx radicand = q.q * q.q - pot.scale * pot.v0;
  // Signed zeros would put the cut value on the lower lip; keep Im(Q) >= 0 there.
  if (radicand.imag() == 0.0) radicand.imag(0.0);
  return std::sqrt(radicand);
}

}  // namespace shellres
