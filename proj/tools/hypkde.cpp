// hypkde: sampling, density estimation and convergence studies on the
// hyperbolic half-plane.

#include <hypkde/estimator.hpp>
#include <hypkde/experiments.hpp>
#include <hypkde/io.hpp>
#include <hypkde/sampling.hpp>
#include <hypkde/spectral.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace hypkde;

std::vector<double>
parse_reals(const std::string& text, std::size_t expected, const char* what)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size())
      throw std::invalid_argument(std::string(what) + ": bad number '" +
                                  field + "'");
    out.push_back(v);
  }
  if (expected != 0 && out.size() != expected)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(expected) + " values, got " +
                                std::to_string(out.size()));
  return out;
}

std::vector<long>
parse_counts(const std::string& text)
{
  std::vector<long> out;
  for (double v : parse_reals(text, 0, "--n-grid")) {
    if (v != std::floor(v) || v < 1)
      throw std::invalid_argument("--n-grid: values must be positive integers");
    out.push_back(static_cast<long>(v));
  }
  return out;
}

GridSpec
parse_grid(const std::string& window, const std::string& counts)
{
  const auto w = parse_reals(window, 4, "--window");
  const auto c = parse_reals(counts, 2, "--grid");
  if (c[0] < 1 || c[1] < 1 || c[0] != std::floor(c[0]) ||
      c[1] != std::floor(c[1]))
    throw std::invalid_argument("--grid: expected two positive integers");
  GridSpec g{ w[0], w[1], w[2], w[3], static_cast<std::size_t>(c[0]),
              static_cast<std::size_t>(c[1]) };
  g.validate();
  return g;
}

struct SampleArgs
{
  std::string density;
  long n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int
run_sample(const SampleArgs& a)
{
  const auto truth = io::load_density_spec(a.density);
  const auto samples = mixture_sample(truth, static_cast<std::size_t>(a.n), a.seed);
  io::save_samples(a.out, samples);
  std::cout << "wrote " << samples.size() << " samples to " << a.out << '\n';
  return 0;
}

struct EstimateArgs
{
  std::string samples;
  EstimatorConfig cfg;
  std::string normalization = "numeric";
  std::string window = "-4,4,0.05,8";
  std::string grid = "160,160";
  std::string out;
};

int
run_estimate(EstimateArgs a)
{
  a.cfg.normalization = parse_normalization(a.normalization);
  a.cfg.validate();
  const GridSpec grid = parse_grid(a.window, a.grid);
  const auto samples = io::load_samples(a.samples);
  if (samples.empty())
    throw std::invalid_argument("no samples in '" + a.samples + "'");
  const auto estimate = evaluate_grid(samples, a.cfg, grid);
  io::save_grid(a.out, estimate);
  std::printf("estimated %zu x %zu grid from %zu samples, window mass %.6f\n",
              grid.nx,
              grid.ny,
              samples.size(),
              estimate.mass());
  return 0;
}

struct ConvergeArgs
{
  std::string density;
  std::string n_grid = "50,100,200,400,800,1600";
  StudyConfig study;
  std::string window = "-4,4,0.05,8";
  std::string grid = "160,160";
  std::string out;
};

int
run_converge(ConvergeArgs a)
{
  a.study.n_grid = parse_counts(a.n_grid);
  a.study.grid = parse_grid(a.window, a.grid);
  const auto truth = io::load_density_spec(a.density);
  const auto result = convergence_study(truth, a.study);
  io::save_records(a.out, result.records);

  const double alpha = a.study.alpha_label;
  std::printf("truth mass in window: %.6f\n", result.truth_mass);
  for (std::size_t i = 0; i < a.study.n_grid.size(); ++i)
    std::printf("n = %6ld  mean ISE = %.6e\n", a.study.n_grid[i],
                result.mean_ise[i]);
  std::printf("fitted slope: %.4f\n", result.slope);
  std::printf("theoretical slope -2a/(2a+2): %.4f\n",
              -2.0 * alpha / (2.0 * alpha + 2.0));
  return 0;
}

struct CheckKernelArgs
{
  double alpha = 2.0;
  double lambda_max = 10.0;
  long steps = 201;
};

int
run_check_kernel(const CheckKernelArgs& a)
{
  if (!(a.lambda_max > 0.0) || a.steps < 1)
    throw std::invalid_argument("need --lambda-max > 0 and --steps >= 1");
  std::vector<double> grid;
  if (a.steps == 1)
    grid.push_back(0.0);
  else
    for (long k = 0; k < a.steps; ++k)
      grid.push_back(-a.lambda_max + 2.0 * a.lambda_max *
                                       static_cast<double>(k) /
                                       static_cast<double>(a.steps - 1));
  const auto kernel = hypergaussian_kernel();
  const auto d4 = check_d4(kernel, grid);
  const double d5 = check_d5(kernel, a.alpha, grid);
  std::printf("kernel: hypergaussian (beta = %g, gamma = %g)\n", kernel.beta,
              kernel.gamma);
  std::printf("grid: %ld points on [%g, %g]\n", a.steps, -a.lambda_max,
              a.lambda_max);
  std::printf("decay envelope: min ratio %.12g, max ratio %.12g -> %s\n",
              d4.min_ratio, d4.max_ratio, d4.passed ? "pass" : "fail");
  std::printf("smoothness at alpha = %g: sup ratio A = %.12g -> %s\n", a.alpha,
              d5, std::isfinite(d5) ? "finite" : "not finite");
  std::printf("(grid checks only; they do not prove the bounds)\n");
  return d4.passed && std::isfinite(d5) ? 0 : 1;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{ "Kernel density estimation on the hyperbolic half-plane" };
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw samples from a density");
  sample_cmd->add_option("--density", sample.density, "Density spec JSON")
    ->required()
    ->check(CLI::ExistingFile);
  sample_cmd->add_option("--n", sample.n, "Number of samples")
    ->required()
    ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample.seed, "RNG seed")->required();
  sample_cmd->add_option("--out", sample.out, "Output CSV (x,y)")->required();

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate a density on a grid");
  est_cmd->add_option("--samples", est.samples, "Sample CSV (x,y)")
    ->required()
    ->check(CLI::ExistingFile);
  est_cmd->add_option("--h", est.cfg.h, "Bandwidth")->required();
  est_cmd->add_option("--T", est.cfg.T, "Spectral cutoff")->required();
  est_cmd->add_option("--n-lambda", est.cfg.n_lambda, "Quadrature nodes in lambda")
    ->capture_default_str();
  est_cmd->add_option("--n-theta", est.cfg.n_theta, "Quadrature nodes in theta")
    ->capture_default_str();
  est_cmd->add_option("--normalization", est.normalization, "numeric, raw or analytic")
    ->check(CLI::IsMember({ "numeric", "raw", "analytic" }))
    ->capture_default_str();
  est_cmd->add_flag("--clip", est.cfg.clip_negative, "Report negative values as 0");
  est_cmd->add_option("--window", est.window, "x0,x1,y0,y1")->capture_default_str();
  est_cmd->add_option("--grid", est.grid, "nx,ny")->capture_default_str();
  est_cmd->add_option("--out", est.out, "Output CSV (x,y,density)")->required();

  ConvergeArgs conv;
  auto* conv_cmd = app.add_subcommand("converge", "Run a convergence-rate study");
  conv_cmd->add_option("--density", conv.density, "Density spec JSON")
    ->required()
    ->check(CLI::ExistingFile);
  conv_cmd->add_option("--n-grid", conv.n_grid, "Increasing sample sizes")
    ->capture_default_str();
  conv_cmd->add_option("--reps", conv.study.replications, "Replications per n")
    ->capture_default_str();
  conv_cmd->add_option("--alpha", conv.study.alpha_label, "Smoothness label alpha")
    ->capture_default_str();
  conv_cmd->add_option("--c-h", conv.study.c_h, "Bandwidth constant")
    ->capture_default_str();
  conv_cmd->add_option("--c-T", conv.study.c_T, "Cutoff constant")
    ->capture_default_str();
  conv_cmd->add_option("--seed", conv.study.master_seed, "Master seed")->required();
  conv_cmd->add_option("--n-lambda", conv.study.n_lambda, "Quadrature nodes in lambda")
    ->capture_default_str();
  conv_cmd->add_option("--n-theta", conv.study.n_theta, "Quadrature nodes in theta")
    ->capture_default_str();
  conv_cmd->add_option("--window", conv.window, "x0,x1,y0,y1")->capture_default_str();
  conv_cmd->add_option("--grid", conv.grid, "nx,ny")->capture_default_str();
  conv_cmd->add_option("--out", conv.out, "Output CSV of per-run records")->required();

  CheckKernelArgs check;
  auto* check_cmd =
    app.add_subcommand("check-kernel", "Grid checks of the kernel decay bounds");
  check_cmd->add_option("--alpha", check.alpha, "Smoothness exponent (> 1)")
    ->capture_default_str();
  check_cmd->add_option("--lambda-max", check.lambda_max, "Grid half-width")
    ->capture_default_str();
  check_cmd->add_option("--steps", check.steps, "Grid points")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample_cmd)
      return run_sample(sample);
    if (*est_cmd)
      return run_estimate(est);
    if (*conv_cmd)
      return run_converge(conv);
    if (*check_cmd)
      return run_check_kernel(check);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
