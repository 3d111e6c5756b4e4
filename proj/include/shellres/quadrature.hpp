#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "shellres/error.hpp"

namespace shellres {

/// Nodes and weights of a quadrature rule on some interval.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  void append(const QuadRule& other) {
    nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  }
};

namespace detail {

// Newton iteration on the three-term Legendre recurrence; nodes are
// symmetric so only half are computed.
inline QuadRule compute_gauss_legendre(std::size_t n) {
  QuadRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (std::size_t j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// Gauss-Legendre rule on [-1, 1]; rules are computed once per size and cached.
inline const QuadRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "quadrature needs at least one node");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<QuadRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadRule>(detail::compute_gauss_legendre(n));
  return *slot;
}

inline QuadRule gauss_legendre(double lo, double hi, std::size_t n) {
  const QuadRule& ref = gauss_legendre(n);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

/// Gauss-Legendre on equal panels of [lo, hi].
inline QuadRule composite_gauss(double lo, double hi, std::size_t panels, std::size_t per_panel) {
  QuadRule rule;
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) rule.append(gauss_legendre(lo + p * h, lo + (p + 1) * h, per_panel));
  return rule;
}

/// Gauss-Legendre on [lo, hi] split at every breakpoint strictly inside it.
inline QuadRule piecewise_gauss(double lo, double hi, std::vector<double> breaks, std::size_t per_piece) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double x) { return !(x > lo && x < hi); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  QuadRule rule;
  double left = lo;
  for (double x : breaks) {
    rule.append(gauss_legendre(left, x, per_piece));
    left = x;
  }
  rule.append(gauss_legendre(left, hi, per_piece));
  return rule;
}

/// Pairwise (cascade) summation; fixed order, so bitwise reproducible.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

}  // namespace shellres
