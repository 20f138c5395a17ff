#include "akde/lognormal.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "akde/special.hpp"

namespace akde {

LogNormalRef::LogNormalRef(double log_mean, double log_sd)
    : mu_(log_mean), sd_(log_sd) {
  if (!std::isfinite(log_mean) || !std::isfinite(log_sd) || log_sd <= 0.0) {
    throw std::domain_error("LogNormalRef: log_sd must be positive and finite");
  }
}

double LogNormalRef::pdf(double x) const {
  if (x <= 0.0) {
    return 0.0;
  }
  const double z = (std::log(x) - mu_) / sd_;
  return std::exp(-0.5 * z * z) / (x * sd_ * kSqrt2Pi);
}

double LogNormalRef::derivative(int order, double x) const {
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw std::invalid_argument("LogNormalRef::derivative: order out of range");
  }
  if (order == 0) {
    return pdf(x);
  }
  if (x <= 0.0) {
    return 0.0;  // all derivatives vanish at the boundary
  }
  const double s2 = sd_ * sd_;
  // Q_{m+1}(L) = Q_m'(L) - (L/s2 + 1 + m) Q_m(L), Q_0 = 1. Coefficients are
  // ascending in powers of L = log x - mu.
  std::vector<double> q{1.0};
  for (int m = 0; m < order; ++m) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k + 1 < q.size()) {
        next[k] += static_cast<double>(k + 1) * q[k + 1];  // derivative term
      }
      next[k + 1] -= q[k] / s2;                            // -L/s2 * Q_m
      next[k] -= (1.0 + static_cast<double>(m)) * q[k];    // -(1+m) * Q_m
    }
    q = std::move(next);
  }
  const double l = std::log(x) - mu_;
  double poly = 0.0;
  for (std::size_t k = q.size(); k-- > 0;) {
    poly = poly * l + q[k];
  }
  return pdf(x) * poly / std::pow(x, order);
}

double LogNormalRef::quantile(double p) const {
  return std::exp(mu_ + sd_ * normal_quantile(p));
}

SampleSet LogNormalRef::sample(std::size_t n, const RandomStream& stream,
                               Execution exec) const {
  std::vector<double> values(n);
  parallel_index(n, exec, [&](std::size_t i) {
    values[i] = std::exp(mu_ + sd_ * stream.normal(i));
  });
  return SampleSet(std::move(values));
}

}  // namespace akde
