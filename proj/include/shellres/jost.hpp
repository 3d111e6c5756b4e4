#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>
#include <utility>

#include "shellres/dual.hpp"
#include "shellres/error.hpp"
#include "shellres/model.hpp"

namespace shellres {

/// Below this |Q|*(b-a) the shell solution is matched with its linear limit.
inline constexpr double kDegenerateShell = 1e-8;
/// Smallest |q| at which the delta-normalized eigenfunctions are evaluated.
inline constexpr double kMinWaveNumber = 1e-12;
/// Relative size of J+ (or J-) below which the input is treated as a pole.
inline constexpr double kPoleGuard = 1e-13;

enum class InnerBranch { principal, flipped };

/// Matching coefficients of the regular solution
///   chi = sin(q r)                      0 < r < a
///       = j1 e^{iQr} + j2 e^{-iQr}      a < r < b
///       = j3 e^{iqr} + j4 e^{-iqr}      b < r
/// and the Jost functions J+ = -2i j4, J- = 2i j3.
/// When `degenerate` is set the shell piece is j1 + j2 r instead.
struct JostCoeffs {
  WaveNumber q;
  cplx inner{};  // Q
  cplx j1{}, j2{}, j3{}, j4{};
  cplx jplus{}, jminus{};
  bool degenerate = false;
};

namespace detail {

inline cplx principal_sqrt(cplx radicand) {
  if (radicand.imag() == 0.0) radicand.imag(0.0);
  return std::sqrt(radicand);
}

inline Dual principal_sqrt(Dual radicand) {
  if (radicand.v.imag() == 0.0) radicand.v.imag(0.0);
  return sqrt(radicand);
}

// sin(q x) / q, entire in q.
template <class T>
T sin_over(const T& q, double x) {
  using std::abs;
  using std::sin;
  if (abs(q) * x < 1e-3) {
    T t = q * q * T(x * x);
    return T(x) * (T(1.0) - t / T(6.0) * (T(1.0) - t / T(20.0) * (T(1.0) - t / T(42.0))));
  }
  return sin(q * T(x)) / q;
}

template <class T>
struct Match {
  T j1, j2, j3, j4;
};

// The regular solution is propagated as phi = chi / q (phi'(0) = 1) so the
// Jost functions stay finite and division-free at q = 0.
template <class T>
Match<T> match(const T& q, const T& inner, bool degenerate, const PotentialSpec& pot) {
  using std::cos;
  using std::exp;
  const T i(I);
  const double a = pot.a, b = pot.b, width = pot.b - pot.a;

  const T phi_a = sin_over(q, a);
  const T dphi_a = cos(q * T(a));

  T phi_b, dphi_b, j1, j2;
  if (degenerate) {
    j1 = q * (phi_a - T(a) * dphi_a);
    j2 = q * dphi_a;
    phi_b = phi_a + T(width) * dphi_a;
    dphi_b = dphi_a;
  } else {
    const T up = T(0.5) * (phi_a - i * dphi_a / inner);    // coefficient of e^{iQ(r-a)}
    const T down = T(0.5) * (phi_a + i * dphi_a / inner);  // coefficient of e^{-iQ(r-a)}
    const T grow = exp(i * inner * T(width));
    const T decay = exp(-i * inner * T(width));
    phi_b = up * grow + down * decay;
    dphi_b = i * inner * (up * grow - down * decay);
    j1 = q * up * exp(-i * inner * T(a));
    j2 = q * down * exp(i * inner * T(a));
  }
  const T j3 = T(0.5) * exp(-i * q * T(b)) * (q * phi_b - i * dphi_b);
  const T j4 = T(0.5) * exp(i * q * T(b)) * (q * phi_b + i * dphi_b);
  return {j1, j2, j3, j4};
}

inline bool is_degenerate(cplx inner, const PotentialSpec& pot) {
  return std::abs(inner) * pot.width() < kDegenerateShell;
}

}  // namespace detail

inline JostCoeffs match_coeffs(const WaveNumber& q, const PotentialSpec& pot,
                               InnerBranch branch = InnerBranch::principal) {
  cplx inner = inner_momentum(q, pot);
  if (branch == InnerBranch::flipped) inner = -inner;
  if (std::abs(q.q) < kMinWaveNumber && std::abs(inner) < kMinWaveNumber)
    throw Error(ErrorCode::DegenerateMatch, "both q and Q vanish");
  const bool degenerate = detail::is_degenerate(inner, pot);
  const auto m = detail::match<cplx>(q.q, inner, degenerate, pot);
  JostCoeffs c;
  c.q = q;
  c.inner = inner;
  c.j1 = m.j1;
  c.j2 = m.j2;
  c.j3 = m.j3;
  c.j4 = m.j4;
  c.jplus = -2.0 * I * m.j4;
  c.jminus = 2.0 * I * m.j3;
  c.degenerate = degenerate;
  return c;
}

/// J+(q) and dJ+/dq, the latter by forward-mode differentiation.
inline std::pair<cplx, cplx> jost_plus_with_derivative(const WaveNumber& q, const PotentialSpec& pot) {
  const Dual qd = Dual::variable(q.q);
  const Dual inner = detail::principal_sqrt(qd * qd - Dual(pot.scale * pot.v0));
  const auto m = detail::match<Dual>(qd, inner, detail::is_degenerate(inner.v, pot), pot);
  const Dual jplus = Dual(-2.0 * I) * m.j4;
  return {jplus.v, jplus.d};
}

inline cplx jost_plus(const WaveNumber& q, const PotentialSpec& pot) { return match_coeffs(q, pot).jplus; }
inline cplx jost_minus(const WaveNumber& q, const PotentialSpec& pot) { return match_coeffs(q, pot).jminus; }

/// Value, first and second radial derivative of a piecewise solution.
struct RadialValue {
  cplx value{};
  cplx derivative{};
  cplx second{};
};

/// The three analytic pieces of a shell-potential solution.
enum class Piece { core, shell, tail };

inline Piece piece_at(double r, const PotentialSpec& pot) {
  if (r <= pot.a) return Piece::core;
  if (r <= pot.b) return Piece::shell;
  return Piece::tail;
}

/// Evaluates one piece of the regular solution at r, wherever r lies.
inline RadialValue regular_piece(Piece piece, double r, const JostCoeffs& c) {
  const cplx q = c.q.q;
  switch (piece) {
    case Piece::core: {
      const cplx v = std::sin(q * r);
      return {v, q * std::cos(q * r), -q * q * v};
    }
    case Piece::shell: {
      if (c.degenerate) return {c.j1 + c.j2 * r, c.j2, 0.0};
      const cplx up = c.j1 * std::exp(I * c.inner * r);
      const cplx down = c.j2 * std::exp(-I * c.inner * r);
      return {up + down, I * c.inner * (up - down), -c.inner * c.inner * (up + down)};
    }
    case Piece::tail: break;
  }
  const cplx out = c.j3 * std::exp(I * q * r);
  const cplx in = c.j4 * std::exp(-I * q * r);
  return {out + in, I * q * (out - in), -q * q * (out + in)};
}

namespace detail {

inline double junction_defect(const RadialValue& left, const RadialValue& right) {
  const double dv = std::abs(left.value - right.value) / std::max(std::abs(left.value), std::abs(right.value));
  const double dd =
      std::abs(left.derivative - right.derivative) / std::max(std::abs(left.derivative), std::abs(right.derivative));
  return std::max(dv, dd);
}

}  // namespace detail

/// Largest relative jump of chi or chi' across r = a and r = b.
inline double matching_defect(const JostCoeffs& c, const PotentialSpec& pot) {
  return std::max(detail::junction_defect(regular_piece(Piece::core, pot.a, c), regular_piece(Piece::shell, pot.a, c)),
                  detail::junction_defect(regular_piece(Piece::shell, pot.b, c), regular_piece(Piece::tail, pot.b, c)));
}

inline RadialValue regular_value(double r, const JostCoeffs& c, const PotentialSpec& pot) {
  return regular_piece(piece_at(r, pot), r, c);
}

inline cplx regular_solution(double r, const JostCoeffs& c, const PotentialSpec& pot) {
  return regular_value(r, c, pot).value;
}

inline cplx regular_solution(double r, const WaveNumber& q, const PotentialSpec& pot) {
  if (r < 0.0) throw Error(ErrorCode::InvalidInput, "radius must be non-negative");
  return regular_solution(r, match_coeffs(q, pot), pot);
}

inline void guard_jost_plus(const JostCoeffs& c) {
  if (std::abs(c.jplus) < kPoleGuard * std::abs(c.jminus))
    throw Error(ErrorCode::PoleAtInput, "J+ vanishes at the requested wave number");
}

inline void guard_jost_minus(const JostCoeffs& c) {
  if (std::abs(c.jminus) < kPoleGuard * std::abs(c.jplus))
    throw Error(ErrorCode::PoleAtInput, "J- vanishes at the requested wave number");
}

inline cplx s_matrix(const JostCoeffs& c) {
  guard_jost_plus(c);
  return c.jminus / c.jplus;
}

inline cplx s_matrix(const WaveNumber& q, const PotentialSpec& pot) { return s_matrix(match_coeffs(q, pot)); }

/// Continuum normalization of the Lippmann-Schwinger eigenfunctions.
enum class Normalization {
  wave_number,  // delta(k - k'), prefactor sqrt(2/pi)
  energy,       // delta(E - E'), prefactor sqrt(scale / (pi k))
};

namespace detail {

inline cplx continuum_prefactor(const WaveNumber& q, const PotentialSpec& pot, Normalization norm) {
  if (std::abs(q.q) <= kMinWaveNumber)
    throw Error(ErrorCode::InvalidInput, "continuum eigenfunctions need |q| > 1e-12");
  if (norm == Normalization::wave_number) return std::sqrt(2.0 / std::numbers::pi);
  return std::sqrt(pot.scale / (std::numbers::pi * q.q));
}

}  // namespace detail

/// <r|q+> = prefactor * chi(r;q) / J+(q), valid at every complex q by the same formula.
inline cplx chi_plus(double r, const JostCoeffs& c, const PotentialSpec& pot,
                     Normalization norm = Normalization::wave_number) {
  guard_jost_plus(c);
  return detail::continuum_prefactor(c.q, pot, norm) * regular_solution(r, c, pot) / c.jplus;
}

inline cplx chi_minus(double r, const JostCoeffs& c, const PotentialSpec& pot,
                      Normalization norm = Normalization::wave_number) {
  guard_jost_minus(c);
  return detail::continuum_prefactor(c.q, pot, norm) * regular_solution(r, c, pot) / c.jminus;
}

inline cplx chi_plus(double r, const WaveNumber& q, const PotentialSpec& pot,
                     Normalization norm = Normalization::wave_number) {
  return chi_plus(r, match_coeffs(q, pot), pot, norm);
}

inline cplx chi_minus(double r, const WaveNumber& q, const PotentialSpec& pot,
                      Normalization norm = Normalization::wave_number) {
  return chi_minus(r, match_coeffs(q, pot), pot, norm);
}

/// Which left eigenfunction: <+q| ("in") or <-q| ("out").
enum class BraKind { in, out };

/// <+q|r> = chi-(r;q) and <-q|r> = chi+(r;q). Off the real axis this is the
/// continuation of the positive-axis values, not a complex conjugate.
inline cplx left_eigenfunction(double r, const JostCoeffs& c, const PotentialSpec& pot, BraKind kind,
                               Normalization norm = Normalization::wave_number) {
  return kind == BraKind::in ? chi_minus(r, c, pot, norm) : chi_plus(r, c, pot, norm);
}

inline cplx left_eigenfunction(double r, const WaveNumber& q, const PotentialSpec& pot, BraKind kind,
                               Normalization norm = Normalization::wave_number) {
  return left_eigenfunction(r, match_coeffs(q, pot), pot, kind, norm);
}

enum class EigenfunctionKind { regular, in_ket, out_ket, in_bra, out_bra, jost_outgoing };

struct EigenfunctionSample {
  double r = 0.0;
  cplx value{};
  EigenfunctionKind kind = EigenfunctionKind::regular;
};

}  // namespace shellres
