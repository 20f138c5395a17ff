#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "akde/kernels.hpp"
#include "akde/lognormal.hpp"
#include "akde/parallel.hpp"

namespace akde {

struct McSummary {
  std::vector<double> points;
  std::vector<double> mean;          // mean of the estimate per point
  std::vector<double> bias;          // mean minus the truth
  std::vector<double> bias_se;       // Monte Carlo standard error of the mean
  std::vector<double> variance;      // across replications, n-1 divisor
  std::vector<double> variance_se;   // normal-theory SE of that variance
  std::optional<double> mise;        // mean integrated squared error
  std::optional<double> mise_se;
  std::size_t n = 0;
  std::size_t replications = 0;
};

// Replicated sampling experiment: draws `replications` samples of size n from
// the truth (substream r of the seed), fits the estimator, and aggregates
// pointwise moments plus, optionally, the integrated squared error. Each
// replication is an independent slot, so the summary is identical for any
// worker count. A failing replication aborts with its index in the message.
McSummary mc_estimator_summary(const KernelSpec& spec,
                               const LogNormalRef& truth, std::size_t n,
                               std::span<const double> points,
                               std::size_t replications, std::uint64_t seed,
                               bool include_mise,
                               Execution exec = default_execution());

struct RateFit {
  double slope;
  double intercept;
};

// Least-squares slope of log y against log x.
RateFit fit_rate(std::span<const double> x, std::span<const double> y);

}  // namespace akde
