#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hypkde {

struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

//! Gauss-Legendre rule with n nodes on [a, b].
//!
//! Nodes come from Newton iteration on P_n started at the Tricomi
//! approximation; the rule is symmetric about (a + b) / 2, node k mirroring
//! node n - 1 - k exactly.
inline QuadratureRule
gauss_legendre(std::size_t n, double a, double b)
{
  if (n < 1)
    throw std::invalid_argument("gauss_legendre: need at least one node");
  if (!(b > a))
    throw std::invalid_argument("gauss_legendre: need b > a");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  if (n == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
    return rule;
  }
  const auto nd = static_cast<double>(n);
  const std::size_t m = (n + 1) / 2;

  for (std::size_t i = 0; i < m; ++i) {
    // i-th largest root of P_n
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.nodes[i] = mid - half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = mid;
  return rule;
}

//! n equispaced nodes on [0, 2 pi) with equal weights 2 pi / n: the
//! trapezoid rule for periodic integrands.
inline QuadratureRule
periodic_trapezoid(std::size_t n)
{
  if (n < 1)
    throw std::invalid_argument("periodic_trapezoid: need at least one node");
  QuadratureRule rule;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  rule.nodes.reserve(n);
  rule.weights.assign(n, step);
  for (std::size_t j = 0; j < n; ++j)
    rule.nodes.push_back(step * static_cast<double>(j));
  return rule;
}

} // namespace hypkde
