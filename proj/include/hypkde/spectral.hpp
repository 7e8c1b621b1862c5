#pragma once

// Helgason-Fourier ingredients on H2: the Plancherel density, the
// hypergaussian kernel's spectral multiplier, the empirical transform of a
// sample and grid checks of the kernel decay assumptions.

#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypkde {

//! Root data of H2 = SL2/SO2.
struct SpectralParams
{
  double rho = 0.5; //!< half-sum of restricted roots
  int dim_x = 2;    //!< manifold dimension
};

inline constexpr SpectralParams h2_params{};

//! |c(lambda)|^{-2} = lambda tanh(pi lambda) / (8 pi^2).
inline double
plancherel_density(double lambda)
{
  constexpr double scale = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
  return scale * lambda * std::tanh(std::numbers::pi * lambda);
}

//! exp(-h^2 (1/4 + lambda^2)): the hypergaussian transform at
//! h (i lambda + rho).
inline double
hypergaussian_multiplier(double lambda, double h)
{
  if (!(h > 0.0))
    throw std::invalid_argument("hypergaussian_multiplier: h must be > 0");
  return std::exp(-h * h * (0.25 + lambda * lambda));
}

//! Spectral description of a bi-K-invariant kernel.
//!
//! The multiplier depends on lambda only; the boundary coordinate kM never
//! enters, so K-invariance holds by construction.
struct KernelSpec
{
  double beta = 2.0;
  double gamma = 1.0;
  double alpha_check = 2.0;
  std::function<std::complex<double>(double)> multiplier;
};

//! Hypergaussian at unit bandwidth: exp(-(lambda^2 + 1/4)).
inline KernelSpec
hypergaussian_kernel()
{
  return { 2.0, 1.0, 2.0, [](double lambda) {
            return std::complex<double>(hypergaussian_multiplier(lambda, 1.0),
                                        0.0);
          } };
}

//! |s| at s = i lambda + rho.
inline double
spectral_abs(double lambda, double rho = h2_params.rho)
{
  return std::hypot(lambda, rho);
}

//! (1/n) sum_i Im(k_theta(X_i))^{1/2 - i lambda}.
inline std::complex<double>
empirical_hf(std::span<const HPoint> samples, double lambda, double theta)
{
  if (samples.empty())
    throw std::invalid_argument("empirical_hf: empty sample list");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::complex<double> acc{ 0.0, 0.0 };
  for (const auto& z : samples) {
    const double log_im = std::log(rotated_height(c, s, z));
    acc += std::exp(std::complex<double>(0.5, -lambda) * log_im);
  }
  return acc / static_cast<double>(samples.size());
}

struct D4Report
{
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool passed = false;
};

//! Largest max/min ratio spread accepted as "bounded by the envelope" on a
//! finite grid.
inline constexpr double d4_max_spread = 1e6;

//! Ratios |multiplier(lambda)| / exp(-|i lambda + rho|^beta / gamma) over a
//! grid. Their min and max play the roles of the constants C1 and C2; the
//! check passes when both are finite and positive and their spread stays
//! below d4_max_spread. Grid-based only: it cannot prove the bound.
inline D4Report
check_d4(const KernelSpec& kernel, std::span<const double> lambda_grid)
{
  if (lambda_grid.empty())
    throw std::invalid_argument("check_d4: empty lambda grid");
  D4Report report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  for (double lambda : lambda_grid) {
    if (!std::isfinite(lambda))
      throw std::invalid_argument("check_d4: non-finite lambda");
    const double envelope =
      std::exp(-std::pow(spectral_abs(lambda), kernel.beta) / kernel.gamma);
    const double ratio = std::abs(kernel.multiplier(lambda)) / envelope;
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  const bool finite =
    std::isfinite(report.min_ratio) && std::isfinite(report.max_ratio);
  report.passed = finite && report.min_ratio > 0.0 &&
                  report.max_ratio / report.min_ratio <= d4_max_spread;
  return report;
}

//! sup over the grid of |multiplier(lambda) - 1| / |i lambda + rho|^alpha.
//! The empirical A; the caller judges finiteness.
inline double
check_d5(const KernelSpec& kernel,
         double alpha,
         std::span<const double> lambda_grid)
{
  if (!(alpha > 1.0))
    throw std::invalid_argument("check_d5: alpha must be > 1");
  double sup = 0.0;
  for (double lambda : lambda_grid) {
    const double num = std::abs(kernel.multiplier(lambda) - 1.0);
    sup = std::max(sup, num / std::pow(spectral_abs(lambda), alpha));
  }
  return sup;
}

//! lo, lo + step, ..., up to hi inclusive (within half a step).
inline std::vector<double>
uniform_grid(double lo, double hi, double step)
{
  if (!(step > 0.0) || !(hi >= lo))
    throw std::invalid_argument("uniform_grid: need step > 0 and hi >= lo");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  grid.reserve(static_cast<std::size_t>(count + 1));
  for (long k = 0; k <= count; ++k)
    grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

} // namespace hypkde
