#include "akde/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "akde/special.hpp"

namespace akde {

DensityEstimate::DensityEstimate(KernelSpec spec, SampleSet samples)
    : spec_(spec), samples_(std::move(samples)) {
  if (spec_.family == KernelFamily::gaussian) {
    throw std::invalid_argument(
        "DensityEstimate: gaussian baseline has no weight form; use "
        "standard_kde");
  }
  if (spec_.family == KernelFamily::gamma && spec_.role == Role::proper) {
    const double s2 = spec_.sigma * spec_.sigma;
    const double log_scale = std::log(s2);
    shape_.reserve(samples_.size());
    log_norm_.reserve(samples_.size());
    for (double v : samples_.values()) {
      const double a = 1.0 + v / s2;
      shape_.push_back(a);
      log_norm_.push_back(a * log_scale + log_gamma(a));
    }
  }
}

double DensityEstimate::operator()(double x) const {
  const std::size_t n = samples_.size();
  const double s2 = spec_.sigma * spec_.sigma;
  double sum = 0.0;
  switch (spec_.family) {
    case KernelFamily::gamma: {
      if (!(x >= 0.0)) {
        throw std::domain_error("DensityEstimate: evaluation point must be nonnegative");
      }
      if (spec_.role == Role::improper) {
        const double a = 1.0 + x / s2;
        const double c = a * std::log(s2) + log_gamma(a);
        const double inv_scale = 1.0 / s2;
        const auto& logs = samples_.logs();
        const auto& values = samples_.values();
        for (std::size_t i = 0; i < n; ++i) {
          sum += std::exp((a - 1.0) * logs[i] - values[i] * inv_scale - c);
        }
      } else {
        const double lx = std::log(x);
        const double inv_scale = 1.0 / s2;
        for (std::size_t i = 0; i < n; ++i) {
          sum += std::exp((shape_[i] - 1.0) * lx - x * inv_scale - log_norm_[i]);
        }
      }
      break;
    }
    default: {
      const auto& values = samples_.values();
      for (std::size_t i = 0; i < n; ++i) {
        sum += weight(spec_, values[i], x);
      }
      break;
    }
  }
  return sum / static_cast<double>(n);
}

std::vector<double> DensityEstimate::on_grid(std::span<const double> xs,
                                             Execution exec) const {
  std::vector<double> out(xs.size());
  parallel_index(xs.size(), exec, [&](std::size_t i) { out[i] = (*this)(xs[i]); });
  return out;
}

double standard_kde(const SampleSet& samples,
                    const std::function<double(double)>& kernel, double h,
                    double x) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("standard_kde: bandwidth must be positive");
  }
  double sum = 0.0;
  for (double v : samples.values()) {
    sum += kernel((v - x) / h);
  }
  return sum / (static_cast<double>(samples.size()) * h);
}

namespace {

double checked_bandwidth(const ShiftedEstimator& est, double u) {
  const double h = est.bandwidth(u);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("shifted estimator: bandwidth must stay positive");
  }
  return h;
}

double checked_shift(const ShiftedEstimator& est, double u) {
  const double d = est.shift(u);
  if (!std::isfinite(d) || std::abs(d) > est.shift_cap) {
    throw std::domain_error("shifted estimator: shift exceeds cap");
  }
  return d;
}

}  // namespace

double evaluate_shifted(const ShiftedEstimator& est, const SampleSet& samples,
                        double x) {
  if (est.moments.order < 1) {
    throw std::invalid_argument("shifted estimator: kernel order not set");
  }
  const int p = est.moments.order;
  const std::size_t n = samples.size();
  double sum = 0.0;
  if (est.variant == ShiftVariant::balloon) {
    const double h = checked_bandwidth(est, x);
    const double center = x + std::pow(h, p) * checked_shift(est, x);
    for (double v : samples.values()) {
      sum += est.kernel((v - center) / h);
    }
    return sum / (static_cast<double>(n) * h);
  }
  for (double v : samples.values()) {
    const double h = checked_bandwidth(est, v);
    const double arg = (v - x + std::pow(h, p) * checked_shift(est, v)) / h;
    sum += est.kernel(arg) / h;
  }
  return sum / static_cast<double>(n);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (count < 2) {
    throw std::invalid_argument("geometric_grid: need at least two points");
  }
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
  }
  std::vector<double> xs(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    xs[j] = lo * std::exp(step * static_cast<double>(j));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<double> arithmetic_grid(double lo, double hi, std::size_t count) {
  if (count < 2) {
    throw std::invalid_argument("arithmetic_grid: need at least two points");
  }
  if (!(hi > lo)) {
    throw std::invalid_argument("arithmetic_grid: need lo < hi");
  }
  std::vector<double> xs(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    xs[j] = lo + step * static_cast<double>(j);
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

}  // namespace akde
