#pragma once

#include <complex>

namespace shellres {

/// Forward-mode dual number over the complex field: value + eps * derivative.
/// Analytic functions pushed through it return f(z) and f'(z) to machine
/// precision, which is what pole refinement and residues need.
struct Dual {
  std::complex<double> v{};
  std::complex<double> d{};

  constexpr Dual() = default;
  constexpr Dual(std::complex<double> value, std::complex<double> deriv = {}) : v(value), d(deriv) {}
  constexpr Dual(double value) : v(value, 0.0) {}

  static constexpr Dual variable(std::complex<double> at) { return Dual(at, 1.0); }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

inline Dual operator+(Dual x, const Dual& y) { return x += y; }
inline Dual operator-(Dual x, const Dual& y) { return x -= y; }
inline Dual operator*(Dual x, const Dual& y) { return x *= y; }
inline Dual operator/(Dual x, const Dual& y) { return x /= y; }
inline Dual operator-(const Dual& x) { return Dual(-x.v, -x.d); }

inline Dual sin(const Dual& x) { return Dual(std::sin(x.v), std::cos(x.v) * x.d); }
inline Dual cos(const Dual& x) { return Dual(std::cos(x.v), -std::sin(x.v) * x.d); }
inline Dual exp(const Dual& x) {
  auto e = std::exp(x.v);
  return Dual(e, e * x.d);
}
inline Dual sqrt(const Dual& x) {
  auto s = std::sqrt(x.v);
  return Dual(s, x.d / (2.0 * s));
}
inline double abs(const Dual& x) { return std::abs(x.v); }

inline std::complex<double> value_of(const std::complex<double>& z) { return z; }
inline std::complex<double> value_of(const Dual& z) { return z.v; }

}  // namespace shellres
