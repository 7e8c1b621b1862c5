#pragma once

// Risk measurement and convergence-rate studies for the half-plane
// estimator.

#include "estimator.hpp"
#include "sampling.hpp"
#include "spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypkde {

//! Integrated squared error sum (a - b)^2 * volume_weight * cell area over
//! two grids on the same raster.
inline double
ise(const DensityGrid& estimate, const DensityGrid& truth)
{
  if (!(estimate.spec == truth.spec) ||
      estimate.values.size() != truth.values.size())
    throw std::invalid_argument("ise: grids do not share the same geometry");
  const GridSpec& g = estimate.spec;
  double total = 0.0;
  for (std::size_t ix = 0; ix < g.nx; ++ix)
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const double diff = estimate.at(ix, iy) - truth.at(ix, iy);
      total += diff * diff * g.cell_hyperbolic_area(ix, iy);
    }
  return total;
}

//! Exact density of `truth` sampled on the raster.
inline DensityGrid
truth_grid(const MixtureDensity& truth, const GridSpec& grid)
{
  grid.validate();
  DensityGrid out{ grid, std::vector<double>(grid.size()) };
  for (std::size_t ix = 0; ix < grid.nx; ++ix)
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
      out.at(ix, iy) = truth.density(grid.node(ix, iy));
  return out;
}

struct RiskBoundParams
{
  double Q = 1.0;
  double A = 1.0;
  double C = 1.0;
  double alpha = 2.0;
  double beta = 2.0;
  double gamma = 1.0;
  double rho_norm = h2_params.rho;
  int dim_x = h2_params.dim_x;

  void validate() const
  {
    if (!(Q > 0.0) || !(A > 0.0) || !(C > 0.0) || !(beta > 0.0) ||
        !(gamma > 0.0) || !(rho_norm > 0.0) || dim_x < 1)
      throw std::invalid_argument("RiskBoundParams: constants must be > 0");
    if (!(alpha > 1.0))
      throw std::invalid_argument("RiskBoundParams: alpha must be > 1");
  }
};

//! The three terms of the upper bound on the mean integrated squared error.
struct RiskTerms
{
  double bandwidth_bias; //!< Q A^2 h^{2 alpha}
  double cutoff_bias;    //!< Q T^{-2 alpha}
  double variance;       //!< C T^d / n e^{-(2/gamma)(h |rho|)^beta}

  double total() const { return bandwidth_bias + cutoff_bias + variance; }
};

inline RiskTerms
risk_terms(const RiskBoundParams& p, double n, double h, double T)
{
  p.validate();
  if (!(n > 0.0) || !(h > 0.0) || !(T > 0.0))
    throw std::invalid_argument("risk_terms: n, h and T must be > 0");
  const double damping =
    std::exp(-(2.0 / p.gamma) * std::pow(h * p.rho_norm, p.beta));
  return { p.Q * p.A * p.A * std::pow(h, 2.0 * p.alpha),
           p.Q * std::pow(T, -2.0 * p.alpha),
           p.C * std::pow(T, p.dim_x) / n * damping };
}

inline double
risk_upper_bound(const RiskBoundParams& p, double n, double h, double T)
{
  return risk_terms(p, n, h, T).total();
}

struct ExperimentRecord
{
  long n = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  double T = 0.0;
  double ise = 0.0;
  double runtime_ms = 0.0;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

//! Ordinary least-squares slope of log(y) on log(x).
inline double
fit_loglog_slope(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 paired values");
  const auto m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog_slope: values must be > 0");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("fit_loglog_slope: x values are all equal");
  return sxy / sxx;
}

struct StudyConfig
{
  std::vector<long> n_grid{ 50, 100, 200, 400, 800, 1600 };
  int replications = 10;
  double alpha_label = 2.0;
  double c_h = 1.0;
  double c_T = 1.0;
  GridSpec grid{};
  std::uint64_t master_seed = 20240601;
  std::size_t n_lambda = 128;
  std::size_t n_theta = 256;
  //! Smallest fraction of the truth's mass the window must hold.
  double min_truth_coverage = 0.98;

  void validate() const
  {
    if (n_grid.size() < 2)
      throw std::invalid_argument("StudyConfig: need at least two n values");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
      if (n_grid[i] < 1)
        throw std::invalid_argument("StudyConfig: n values must be >= 1");
      if (i > 0 && n_grid[i] <= n_grid[i - 1])
        throw std::invalid_argument(
          "StudyConfig: n_grid must be strictly increasing");
    }
    if (replications < 1)
      throw std::invalid_argument("StudyConfig: replications must be >= 1");
    if (!(alpha_label > 1.0) || !(c_h > 0.0) || !(c_T > 0.0))
      throw std::invalid_argument(
        "StudyConfig: need alpha > 1, c_h > 0, c_T > 0");
    if (!(min_truth_coverage > 0.0) || min_truth_coverage > 1.0)
      throw std::invalid_argument(
        "StudyConfig: min_truth_coverage must be in (0, 1]");
    grid.validate();
  }
};

struct StudyResult
{
  std::vector<ExperimentRecord> records;
  std::vector<double> mean_ise; //!< one entry per n_grid value
  double slope = 0.0;
  double truth_mass = 0.0; //!< hyperbolic mass of the truth on the window
};

//! Plain power-law cutoff c_T * n^{1/(2 alpha + d)}, for studies that do not
//! know the bound constants Q and C.
inline double
cutoff_power_law(long n, double alpha, double c_T)
{
  return c_T * std::pow(static_cast<double>(n),
                        1.0 / (2.0 * alpha + h2_params.dim_x));
}

//! Mean ISE over replications for each n, and the OLS log-log slope.
//!
//! Each (n, replication) draws its own sample from a seed derived from
//! (master_seed, n, replication), so records do not depend on execution
//! order.
inline StudyResult
convergence_study(const MixtureDensity& truth, const StudyConfig& cfg)
{
  cfg.validate();
  StudyResult result;
  const DensityGrid truth_values = truth_grid(truth, cfg.grid);
  result.truth_mass = truth_values.mass();
  if (result.truth_mass < cfg.min_truth_coverage)
    throw std::runtime_error(
      "convergence_study: window holds only " +
      std::to_string(result.truth_mass) + " of the truth's mass");

  std::vector<double> ns;
  for (long n : cfg.n_grid) {
    double sum = 0.0;
    for (int rep = 0; rep < cfg.replications; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      ExperimentRecord rec;
      rec.n = n;
      rec.replication = rep;
      rec.seed = derive_seed(cfg.master_seed,
                             static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(rep));
      rec.h = bandwidth_select(n, cfg.alpha_label, cfg.c_h);
      rec.T = cutoff_power_law(n, cfg.alpha_label, cfg.c_T);

      const auto samples =
        truth.sample(static_cast<std::size_t>(n), rec.seed);
      EstimatorConfig est;
      est.h = rec.h;
      est.T = rec.T;
      est.n_lambda = cfg.n_lambda;
      est.n_theta = cfg.n_theta;
      // The unclipped, unrescaled estimate is the one the risk bound is
      // about.
      est.normalization = Normalization::analytic;
      const auto estimate = evaluate_grid(samples, est, cfg.grid);
      rec.ise = ise(estimate, truth_values);
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      sum += rec.ise;
      result.records.push_back(rec);
    }
    result.mean_ise.push_back(sum / cfg.replications);
    ns.push_back(static_cast<double>(n));
  }
  result.slope = fit_loglog_slope(ns, result.mean_ise);
  return result;
}

} // namespace hypkde
