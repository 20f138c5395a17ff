#pragma once

#include <cstddef>

#include "akde/parallel.hpp"
#include "akde/rng.hpp"
#include "akde/samples.hpp"

namespace akde {

// Log-normal reference density with exact derivatives of any (moderate)
// order. Serves as the ground truth for plugin bandwidths, the asymptotic
// MISE formulas, and the simulation harness.
class LogNormalRef {
 public:
  static constexpr int kMaxDerivativeOrder = 16;

  LogNormalRef(double log_mean, double log_sd);

  double log_mean() const noexcept { return mu_; }
  double log_sd() const noexcept { return sd_; }

  // Density; 0 for x <= 0 (the boundary limit).
  double pdf(double x) const;

  // Exact order-th derivative of the density, order 0 returns pdf(x). The
  // closed form is pdf(x) * Q_order(log x - mu) / x^order with polynomial
  // coefficients built by differentiating the previous order.
  double derivative(int order, double x) const;

  double quantile(double p) const;

  // Draw i is exp(mu + sd * normal(i)): addressable, order-independent.
  SampleSet sample(std::size_t n, const RandomStream& stream,
                   Execution exec = Execution::serial) const;

 private:
  double mu_;
  double sd_;
};

}  // namespace akde
