#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "akde/estimators.hpp"
#include "akde/kernels.hpp"
#include "akde/parallel.hpp"
#include "akde/samples.hpp"

namespace akde {

// MISE-optimal smoothing parameter under a log-normal reference, the closed
// minimizer of asymptotic_mise_lognormal in sigma. Raises
// UnsupportedAsymptotics where that curve does not exist and
// std::domain_error for a degenerate (zero log-spread) fit.
double plugin_bandwidth(KernelFamily family, Role role, double mu,
                        double Sigma, std::size_t n);
double plugin_bandwidth(KernelFamily family, Role role,
                        const SampleSet& samples);

// Integral over (0, infinity) of the product of two unit-scale gamma weight
// densities anchored at xi and xj; the pairwise building block of the CV
// score for the proper gamma kernel.
double gamma_overlap(double xi, double xj, double sigma);

// Leave-one-out cross-validation score M(sigma) = int fhat^2 - (2/n) sum_i
// fhat_{-i}(X_i). Needs n >= 2. The proper gamma kernel uses the closed-form
// pairwise overlap; other kernels integrate the squared estimate with the
// tail truncated where it falls below 1e-14 of its peak.
double loo_cv_score(const KernelSpec& spec, const SampleSet& samples,
                    Execution exec = default_execution());

struct BandwidthProfile {
  std::vector<double> sigma;
  std::vector<double> cv_score;
  std::vector<double> asymptotic_mise;  // empty when no closed form exists
  double cv_argmin;                      // ties resolve to the smaller sigma
  std::optional<double> plugin;          // absent when unsupported/degenerate
};

// Default search grid: 40 geometric points on [plugin/5, plugin*5], falling
// back to [0.01, 2] when the plugin value does not exist.
std::vector<double> default_sigma_grid(KernelFamily family, Role role,
                                       const SampleSet& samples);

BandwidthProfile cv_profile(KernelFamily family, Role role,
                            const SampleSet& samples,
                            std::vector<double> sigma_grid = {},
                            Execution exec = default_execution());

}  // namespace akde
