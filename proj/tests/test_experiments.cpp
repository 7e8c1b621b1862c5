#include <hypkde/experiments.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace hypkde;

namespace {

DensityGrid
constant_grid(const GridSpec& g, double v)
{
  return { g, std::vector<double>(g.size(), v) };
}

MixtureDensity
standard_truth()
{
  return MixtureDensity({ { 1.0, RiemannianGaussian({ 0.0, 1.5 }, 0.7) } });
}

StudyConfig
small_study()
{
  StudyConfig cfg;
  cfg.n_grid = { 20, 40, 80 };
  cfg.replications = 2;
  cfg.grid = GridSpec{ -3.0, 3.0, 0.1, 6.0, 24, 24 };
  cfg.n_lambda = 32;
  cfg.n_theta = 64;
  cfg.min_truth_coverage = 0.9;
  return cfg;
}

} // namespace

TEST(Ise, Examples)
{
  const GridSpec g{ -1.0, 1.0, 0.5, 2.0, 8, 6 };
  const auto zero = constant_grid(g, 0.0);
  const auto one = constant_grid(g, 1.0);
  EXPECT_EQ(ise(zero, zero), 0.0);
  // The hyperbolic area of [-1, 1] x [0.5, 2] is 2 (1/0.5 - 1/2) = 3; six
  // midpoint cells in y undershoot 1/y^2 by a few percent.
  double area = 0.0;
  for (std::size_t ix = 0; ix < g.nx; ++ix)
    for (std::size_t iy = 0; iy < g.ny; ++iy)
      area += g.cell_hyperbolic_area(ix, iy);
  EXPECT_NEAR(ise(one, zero), area, 1e-14);
  EXPECT_NEAR(area, 3.0, 0.1);
  EXPECT_EQ(ise(one, zero), ise(zero, one));

  GridSpec other = g;
  other.nx = 9;
  EXPECT_THROW(ise(constant_grid(other, 0.0), zero), std::invalid_argument);
}

TEST(Ise, StableUnderRefinement)
{
  const auto truth = standard_truth();
  const auto samples = truth.sample(40, 3);
  EstimatorConfig cfg;
  cfg.h = 0.5;
  cfg.T = 4.0;
  cfg.n_lambda = 48;
  cfg.n_theta = 128;
  cfg.normalization = Normalization::analytic;
  GridSpec coarse{ -3.0, 3.0, 0.1, 6.0, 80, 80 };
  GridSpec fine = coarse;
  fine.nx = fine.ny = 160;
  const double a = ise(evaluate_grid(samples, cfg, coarse), truth_grid(truth, coarse));
  const double b = ise(evaluate_grid(samples, cfg, fine), truth_grid(truth, fine));
  EXPECT_NEAR(a, b, 0.01 * b);
}

TEST(RiskBound, Examples)
{
  RiskBoundParams p;
  // Q A^2 h^4 + T^-4 + T^2/n e^{-2 (h/2)^2} at n = 1000, h = 0.3, T = 3.
  EXPECT_NEAR(risk_upper_bound(p, 1000.0, 0.3, 3.0),
              0.0081 + 1.0 / 81.0 + 0.009 * std::exp(-0.045), 1e-15);
  // 30-digit value at n = 100, h = 0.5, T = 1.5.
  EXPECT_NEAR(risk_upper_bound(p, 100.0, 0.5, 1.5), 0.279887044505684261,
              1e-15);

  const auto terms = risk_terms(p, 1000.0, 0.3, 3.0);
  EXPECT_NEAR(terms.total(), risk_upper_bound(p, 1000.0, 0.3, 3.0), 0.0);
  EXPECT_NEAR(risk_terms(p, 2000.0, 0.3, 3.0).variance, 0.5 * terms.variance,
              1e-18);
  EXPECT_EQ(risk_terms(p, 2000.0, 0.3, 3.0).cutoff_bias, terms.cutoff_bias);

  EXPECT_THROW(risk_upper_bound(p, 0.0, 0.3, 3.0), std::invalid_argument);
  p.alpha = 1.0;
  EXPECT_THROW(risk_upper_bound(p, 10.0, 0.3, 3.0), std::invalid_argument);
}

TEST(RiskBound, Limits)
{
  const RiskBoundParams p;
  // Huge T leaves the variance term; tiny T the truncation term.
  const auto big = risk_terms(p, 100.0, 0.5, 1e4);
  EXPECT_GT(big.variance, 1e4 * (big.bandwidth_bias + big.cutoff_bias));
  const auto small = risk_terms(p, 100.0, 0.5, 1e-2);
  EXPECT_GT(small.cutoff_bias, 1e4 * (small.bandwidth_bias + small.variance));
}

TEST(RiskBound, CutoffSelectMinimizes)
{
  const RiskBoundParams p;
  for (long n : { 100L, 1000L, 50000L })
    for (double h : { 0.1, 0.3, 1.0 }) {
      const double t_star =
        cutoff_select(n, p.alpha, h, p.Q, p.C, p.gamma, p.beta, p.rho_norm);
      const double best = risk_upper_bound(p, n, h, t_star);
      for (double f : { 0.9, 0.99, 1.01, 1.1 })
        EXPECT_GT(risk_upper_bound(p, n, h, f * t_star), best);
    }
}

TEST(FitSlope, Examples)
{
  const std::vector<double> n{ 50, 100, 200, 400, 800, 1600 };
  std::vector<double> y;
  for (double v : n)
    y.push_back(3.0 * std::pow(v, -2.0 / 3.0));
  EXPECT_NEAR(fit_loglog_slope(n, y), -2.0 / 3.0, 1e-14);

  const std::vector<double> one{ 1.0 };
  EXPECT_THROW(fit_loglog_slope(one, one), std::invalid_argument);
  const std::vector<double> flat{ 2.0, 2.0 };
  EXPECT_THROW(fit_loglog_slope(flat, flat), std::invalid_argument);
  const std::vector<double> neg{ 1.0, -2.0 };
  EXPECT_THROW(fit_loglog_slope(flat, neg), std::invalid_argument);
}

TEST(ConvergenceStudy, DeterministicRecords)
{
  const auto truth = standard_truth();
  const auto cfg = small_study();
  const auto a = convergence_study(truth, cfg);
  const auto b = convergence_study(truth, cfg);
  ASSERT_EQ(a.records.size(), 6u);
  ASSERT_EQ(a.mean_ise.size(), 3u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].ise, b.records[i].ise);
    EXPECT_EQ(a.records[i].h, bandwidth_select(a.records[i].n, 2.0, 1.0));
    EXPECT_EQ(a.records[i].T, cutoff_power_law(a.records[i].n, 2.0, 1.0));
    EXPECT_GT(a.records[i].ise, 0.0);
  }
  EXPECT_EQ(a.slope, b.slope);
  EXPECT_NE(a.records[0].seed, a.records[1].seed);
  EXPECT_GT(a.truth_mass, 0.9);
}

TEST(ConvergenceStudy, Validation)
{
  const auto truth = standard_truth();
  auto cfg = small_study();
  cfg.n_grid = { 40, 20 };
  EXPECT_THROW(convergence_study(truth, cfg), std::invalid_argument);
  cfg = small_study();
  cfg.n_grid = { 40 };
  EXPECT_THROW(convergence_study(truth, cfg), std::invalid_argument);
  cfg = small_study();
  cfg.replications = 0;
  EXPECT_THROW(convergence_study(truth, cfg), std::invalid_argument);
  cfg = small_study();
  cfg.alpha_label = 1.0;
  EXPECT_THROW(convergence_study(truth, cfg), std::invalid_argument);

  // A window that misses most of the truth is refused.
  cfg = small_study();
  cfg.grid = GridSpec{ 5.0, 6.0, 0.1, 1.0, 8, 8 };
  EXPECT_THROW(convergence_study(truth, cfg), std::runtime_error);
}
