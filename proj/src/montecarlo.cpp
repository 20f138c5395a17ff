#include "akde/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "akde/estimators.hpp"
#include "akde/quadrature.hpp"
#include "akde/rng.hpp"

namespace akde {

McSummary mc_estimator_summary(const KernelSpec& spec,
                               const LogNormalRef& truth, std::size_t n,
                               std::span<const double> points,
                               std::size_t replications, std::uint64_t seed,
                               bool include_mise, Execution exec) {
  if (replications < 2) {
    throw std::invalid_argument("mc_estimator_summary: need >= 2 replications");
  }
  if (points.empty()) {
    throw std::invalid_argument("mc_estimator_summary: no evaluation points");
  }
  const std::size_t k = points.size();
  const RandomStream root(seed);
  std::vector<double> values(replications * k);
  std::vector<double> ise(include_mise ? replications : 0);

  parallel_index(replications, exec, [&](std::size_t r) {
    try {
      const SampleSet sample = truth.sample(n, root.substream(r));
      const DensityEstimate est(spec, sample);
      for (std::size_t j = 0; j < k; ++j) {
        values[r * k + j] = est(points[j]);
      }
      if (include_mise) {
        QuadratureOptions opt;
        opt.abs_tol = 1e-12;
        opt.rel_tol = 1e-7;
        ise[r] = integrate_positive(
                     [&](double x) {
                       const double d = est(x) - truth.pdf(x);
                       return d * d;
                     },
                     spec.domain_min(), opt)
                     .value;
      }
    } catch (const std::exception& e) {
      throw NonConvergence("replication " + std::to_string(r) +
                           " failed: " + e.what());
    }
  });

  McSummary out;
  out.points.assign(points.begin(), points.end());
  out.n = n;
  out.replications = replications;
  const double rd = static_cast<double>(replications);
  out.mean.resize(k);
  out.bias.resize(k);
  out.bias_se.resize(k);
  out.variance.resize(k);
  out.variance_se.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double m = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      m += values[r * k + j];
    }
    m /= rd;
    double ss = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      const double d = values[r * k + j] - m;
      ss += d * d;
    }
    const double var = ss / (rd - 1.0);
    out.mean[j] = m;
    out.bias[j] = m - truth.pdf(points[j]);
    out.bias_se[j] = std::sqrt(var / rd);
    out.variance[j] = var;
    // normal-theory standard error of a sample variance
    out.variance_se[j] = var * std::sqrt(2.0 / (rd - 1.0));
  }
  if (include_mise) {
    double m = 0.0;
    for (double v : ise) {
      m += v;
    }
    m /= rd;
    double ss = 0.0;
    for (double v : ise) {
      const double d = v - m;
      ss += d * d;
    }
    out.mise = m;
    out.mise_se = std::sqrt(ss / (rd - 1.0) / rd);
  }
  return out;
}

RateFit fit_rate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_rate: need matching series, length >= 2");
  }
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("fit_rate: series must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double nd = static_cast<double>(n);
  const double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
  return {slope, (sy - slope * sx) / nd};
}

}  // namespace akde
