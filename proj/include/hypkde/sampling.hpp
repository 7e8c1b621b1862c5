#pragma once

// Ground-truth densities on H2 for risk experiments: Riemannian Gaussians
// exp(-d(center, z)^2 / (2 sigma^2)) / Z(sigma) w.r.t. hyperbolic area, and
// finite mixtures of them.

#include "geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypkde {

//! splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t
mix_seed(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t
derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
  return mix_seed(mix_seed(mix_seed(master) ^ a) ^ b);
}

using Rng = std::mt19937_64;

inline Rng
make_rng(std::uint64_t seed)
{
  return Rng(mix_seed(seed));
}

//! Radial normalizer Z(sigma) = 2 pi int_0^inf exp(-r^2 / (2 sigma^2))
//! sinh(r) dr by adaptive Gauss-Kronrod quadrature.
inline double
riemannian_gaussian_normalizer(double sigma)
{
  const auto integrand = [sigma](double r) {
    return std::exp(-r * r / (2.0 * sigma * sigma)) * std::sinh(r);
  };
  // The integrand is negligible (below e^-50 relative) past this point.
  const double r_max = sigma * sigma + 12.0 * sigma;
  double error = 0.0;
  const double value =
    boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, r_max, 15, 1e-14, &error);
  return 2.0 * std::numbers::pi * value;
}

class RiemannianGaussian
{
public:
  RiemannianGaussian(HPoint center, double sigma)
    : center_(center)
    , sigma_(sigma)
  {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::invalid_argument("RiemannianGaussian: sigma must be > 0");
    log_norm_ = std::log(riemannian_gaussian_normalizer(sigma));
    if (!std::isfinite(log_norm_))
      throw std::invalid_argument(
        "RiemannianGaussian: normalizer overflows for this sigma");
    const double mass = radial_mass(10.0 * sigma + 10.0);
    if (std::abs(mass - 1.0) > mass_tolerance)
      throw std::runtime_error("RiemannianGaussian: density integrates to " +
                               std::to_string(mass));
  }

  static constexpr double mass_tolerance = 1e-6;

  //! 2 pi int_0^r_max density(r) sinh(r) dr, by a Gauss-Kronrod pass
  //! independent of the one that produced the normalizer.
  double radial_mass(double r_max) const
  {
    const auto integrand = [this](double r) {
      return std::exp(-r * r / (2.0 * sigma_ * sigma_) - log_norm_) *
             std::sinh(r);
    };
    const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, r_max, 20, 1e-13);
    return 2.0 * std::numbers::pi * value;
  }

  const HPoint& center() const noexcept { return center_; }
  double sigma() const noexcept { return sigma_; }
  double log_norm() const noexcept { return log_norm_; }

  double density(const HPoint& z) const
  {
    const double r = geodesic_dist(center_, z);
    return std::exp(-r * r / (2.0 * sigma_ * sigma_) - log_norm_);
  }

  //! Geodesic radius with density proportional to
  //! exp(-r^2 / (2 sigma^2)) sinh(r) on (0, inf).
  double sample_radius(Rng& rng) const
  {
    // Envelope: N(sigma^2, sigma^2) restricted to r > 0; acceptance
    // probability 1 - e^{-2r} is the exact ratio to the target.
    std::normal_distribution<double> proposal(sigma_ * sigma_, sigma_);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
      const double r = proposal(rng);
      if (r <= 0.0)
        continue;
      if (unit(rng) < -std::expm1(-2.0 * r))
        return r;
    }
  }

  HPoint sample_one(Rng& rng) const
  {
    const double r = sample_radius(rng);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    // Rotating by phi about i turns tangent directions by 2 phi, so a
    // uniform direction needs phi uniform on [0, pi).
    const double phi = 0.5 * angle(rng);
    const HPoint on_axis{ 0.0, std::exp(r) };
    const HPoint about_origin = mobius_apply(rotation(phi), on_axis);
    return mobius_apply(isometry_from_origin(center_), about_origin);
  }

  std::vector<HPoint> sample(std::size_t count, std::uint64_t seed) const
  {
    auto rng = make_rng(seed);
    std::vector<HPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(sample_one(rng));
    return out;
  }

private:
  HPoint center_;
  double sigma_;
  double log_norm_ = 0.0;
};

inline double
rg_density(const RiemannianGaussian& g, const HPoint& z)
{
  return g.density(z);
}

inline std::vector<HPoint>
rg_sample(const RiemannianGaussian& g, std::size_t count, std::uint64_t seed)
{
  if (count < 1)
    throw std::invalid_argument("rg_sample: count must be >= 1");
  return g.sample(count, seed);
}

struct MixtureComponent
{
  double weight;
  RiemannianGaussian gaussian;
};

class MixtureDensity
{
public:
  static constexpr double weight_tolerance = 1e-12;

  explicit MixtureDensity(std::vector<MixtureComponent> components)
    : components_(std::move(components))
  {
    if (components_.empty())
      throw std::invalid_argument("MixtureDensity: no components");
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight > 0.0))
        throw std::invalid_argument("MixtureDensity: weights must be > 0");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > weight_tolerance)
      throw std::invalid_argument("MixtureDensity: weights sum to " +
                                  std::to_string(total) + ", not 1");
  }

  const std::vector<MixtureComponent>& components() const noexcept
  {
    return components_;
  }

  double density(const HPoint& z) const
  {
    double total = 0.0;
    for (const auto& c : components_)
      total += c.weight * c.gaussian.density(z);
    return total;
  }

  //! Index of the component picked by a uniform variate u in [0, 1).
  std::size_t pick(double u) const
  {
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < components_.size(); ++k) {
      cumulative += components_[k].weight;
      if (u < cumulative)
        return k;
    }
    return components_.size() - 1;
  }

  //! Samples with the index of the generating component.
  std::vector<std::pair<std::size_t, HPoint>> sample_labeled(
    std::size_t count,
    std::uint64_t seed) const
  {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<std::size_t, HPoint>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t k = pick(unit(rng));
      out.emplace_back(k, components_[k].gaussian.sample_one(rng));
    }
    return out;
  }

  std::vector<HPoint> sample(std::size_t count, std::uint64_t seed) const
  {
    std::vector<HPoint> out;
    out.reserve(count);
    for (auto& [k, z] : sample_labeled(count, seed))
      out.push_back(z);
    return out;
  }

private:
  std::vector<MixtureComponent> components_;
};

inline double
mixture_density(const MixtureDensity& m, const HPoint& z)
{
  return m.density(z);
}

inline std::vector<HPoint>
mixture_sample(const MixtureDensity& m, std::size_t count, std::uint64_t seed)
{
  if (count < 1)
    throw std::invalid_argument("mixture_sample: count must be >= 1");
  return m.sample(count, seed);
}

} // namespace hypkde
