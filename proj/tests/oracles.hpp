#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "shellres/model.hpp"

namespace oracle {

using shellres::cplx;
using shellres::PotentialSpec;

struct OdeState {
  cplx u, du;
};

// Classical RK4 for u'' = (scale V(r) - q^2) u on [r0, r1] with a fixed step count.
// V must be constant on the interval.
inline OdeState rk4(OdeState s, double r0, double r1, double v, cplx q, double scale, std::size_t steps) {
  const cplx c = scale * v - q * q;
  const double h = (r1 - r0) / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const cplx k1u = s.du, k1d = c * s.u;
    const cplx k2u = s.du + 0.5 * h * k1d, k2d = c * (s.u + 0.5 * h * k1u);
    const cplx k3u = s.du + 0.5 * h * k2d, k3d = c * (s.u + 0.5 * h * k2u);
    const cplx k4u = s.du + h * k3d, k4d = c * (s.u + h * k3u);
    s.u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    s.du += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  return s;
}

// Regular solution u(0) = 0, u'(0) = q (so u ~ sin(qr) near the origin), integrated to r.
inline OdeState regular(double r, cplx q, const PotentialSpec& pot, double per_unit = 20000.0) {
  OdeState s{0.0, q};
  const double marks[] = {0.0, pot.a, pot.b};
  for (int piece = 0; piece < 3; ++piece) {
    const double lo = marks[piece];
    const double hi = piece < 2 ? std::min(r, marks[piece + 1]) : r;
    if (hi <= lo) break;
    const double v = piece == 1 ? pot.v0 : 0.0;
    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) * per_unit));
    s = rk4(s, lo, hi, v, q, pot.scale, std::max<std::size_t>(steps, 1));
  }
  return s;
}

struct Tail {
  cplx j3, j4;
};

// Coefficients of e^{iqr} and e^{-iqr} read off at r = b.
inline Tail tail_coefficients(cplx q, const PotentialSpec& pot) {
  const OdeState s = regular(pot.b, q, pot);
  const cplx i(0.0, 1.0);
  const cplx ratio = s.du / (i * q);
  return {0.5 * (s.u + ratio) * std::exp(-i * q * pot.b), 0.5 * (s.u - ratio) * std::exp(i * q * pot.b)};
}

// Composite Simpson rule on [lo, hi] with n (even) intervals.
template <class F>
auto simpson(F&& f, double lo, double hi, std::size_t n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / static_cast<double>(n);
  auto acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return acc * (h / 3.0);
}

// Zeros of |F| in a rectangle: local minima on an n x n grid, each refined by
// repeatedly zooming a small grid around the current best point.
inline std::vector<cplx> grid_minima(const std::function<double(cplx)>& mag, double re0, double re1, double im0,
                                     double im1, std::size_t n, double floor) {
  std::vector<double> grid(n * n);
  const double dx = (re1 - re0) / static_cast<double>(n - 1), dy = (im1 - im0) / static_cast<double>(n - 1);
  auto at = [&](std::size_t i, std::size_t j) { return cplx(re0 + dx * static_cast<double>(i), im0 + dy * static_cast<double>(j)); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) grid[i * n + j] = mag(at(i, j));
  std::vector<cplx> found;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double v = grid[i * n + j];
      bool lowest = true;
      for (int di = -1; di <= 1 && lowest; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && grid[(i + di) * n + (j + dj)] <= v) lowest = false;
      if (!lowest) continue;
      cplx best = at(i, j);
      double best_v = v, span = 2.0 * std::max(dx, dy);
      while (span > 1e-13) {
        const cplx center = best;
        for (int a = -10; a <= 10; ++a)
          for (int b = -10; b <= 10; ++b) {
            const cplx z = center + cplx(span * a / 10.0, span * b / 10.0);
            const double m = mag(z);
            if (m < best_v) {
              best_v = m;
              best = z;
            }
          }
        span *= 0.25;
      }
      if (best_v < floor) found.push_back(best);
    }
  }
  std::sort(found.begin(), found.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  return found;
}

// Fourth-order central second derivative.
template <class F>
auto second_derivative(F&& f, double r, double h) {
  return (-f(r + 2 * h) + 16.0 * f(r + h) - 30.0 * f(r) + 16.0 * f(r - h) - f(r - 2 * h)) / (12.0 * h * h);
}

}  // namespace oracle
