#pragma once

// Reference computations used only by the tests. None of them go through
// SpectralEstimator.

#include <hypkde/geometry.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace hypkde::testing {

//! Heat kernel of H2 at time t and geodesic radius rho, from McKean's
//! integral
//!   p_t(rho) = sqrt(2) e^{-t/4} / (4 pi t)^{3/2}
//!              int_rho^inf s e^{-s^2/(4t)} / sqrt(cosh s - cosh rho) ds,
//! with s = rho + u^2 to remove the endpoint singularity.
inline double
heat_kernel(double t, double rho)
{
  const double pi = std::numbers::pi;
  const auto integrand = [t, rho](double u) {
    if (u == 0.0)
      return rho > 0.0 ? 2.0 * rho * std::exp(-rho * rho / (4.0 * t)) /
                           std::sqrt(std::sinh(rho))
                       : 0.0;
    const double v = u * u;
    const double s = rho + v;
    // cosh(rho + v) - cosh(rho) = 2 sinh(rho + v/2) sinh(v/2)
    const double gap = 2.0 * std::sinh(rho + 0.5 * v) * std::sinh(0.5 * v);
    return 2.0 * u * s * std::exp(-s * s / (4.0 * t)) / std::sqrt(gap);
  };
  const double u_max = std::sqrt(40.0 * std::sqrt(t) + 10.0);
  const double integral =
    boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, u_max, 20, 1e-14);
  return std::sqrt(2.0) * std::exp(-t / 4.0) / std::pow(4.0 * pi * t, 1.5) *
         integral;
}

//! The estimator written out directly: composite Simpson in lambda over
//! [-T, T], rectangle rule in theta over [0, 2 pi), complex powers via
//! std::pow. Slow; for a handful of points only.
inline std::complex<double>
direct_estimate(std::span<const HPoint> samples,
                double h,
                double T,
                const HPoint& z,
                int lambda_intervals,
                int theta_nodes)
{
  const double pi = std::numbers::pi;
  const double dl = 2.0 * T / lambda_intervals;
  const double dt = 2.0 * pi / theta_nodes;
  std::complex<double> total{ 0.0, 0.0 };
  for (int a = 0; a < theta_nodes; ++a) {
    const double theta = a * dt;
    const SL2Matrix k{ std::cos(theta), -std::sin(theta), std::sin(theta),
                       std::cos(theta) };
    const double im_z = mobius_apply(k, z).y();
    std::vector<double> im_samples;
    for (const auto& s : samples)
      im_samples.push_back(mobius_apply(k, s).y());
    for (int b = 0; b <= lambda_intervals; ++b) {
      const double lambda = -T + b * dl;
      const double simpson =
        (b == 0 || b == lambda_intervals) ? 1.0 : (b % 2 == 1 ? 4.0 : 2.0);
      std::complex<double> ecf{ 0.0, 0.0 };
      for (double y : im_samples)
        ecf += std::pow(std::complex<double>(y, 0.0),
                        std::complex<double>(0.5, -lambda));
      ecf /= static_cast<double>(samples.size());
      const double weight = std::exp(-(h * h / 4.0 + h * h * lambda * lambda)) *
                            lambda * std::tanh(pi * lambda) / (8.0 * pi * pi);
      total += simpson * dl / 3.0 * dt * ecf * weight *
               std::pow(std::complex<double>(im_z, 0.0),
                        std::complex<double>(0.5, lambda));
    }
  }
  return total;
}

//! Random determinant-one matrix with entries of moderate size.
inline SL2Matrix
random_sl2(std::mt19937_64& rng, double spread = 1.0)
{
  std::normal_distribution<double> normal(0.0, spread);
  for (;;) {
    const double a = 1.0 + normal(rng);
    if (std::abs(a) < 0.2)
      continue;
    const double b = normal(rng);
    const double c = normal(rng);
    return { a, b, c, (1.0 + b * c) / a };
  }
}

inline HPoint
random_point(std::mt19937_64& rng, double spread = 1.0)
{
  std::normal_distribution<double> normal(0.0, spread);
  return { normal(rng), std::exp(normal(rng)) };
}

} // namespace hypkde::testing
