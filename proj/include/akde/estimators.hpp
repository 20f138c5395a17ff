#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "akde/kernels.hpp"
#include "akde/parallel.hpp"
#include "akde/samples.hpp"

namespace akde {

// Weight-form density estimate: the sample mean of weight(spec, X_i, x).
// Evaluation uses family-specific inner loops that share per-sample
// constants; they agree with the naive weight mean to a couple of ulp per
// term. Sums run in index order, so results are machine-identical across
// worker counts.
class DensityEstimate {
 public:
  DensityEstimate(KernelSpec spec, SampleSet samples);

  double operator()(double x) const;

  std::vector<double> on_grid(std::span<const double> xs,
                              Execution exec = default_execution()) const;

  const KernelSpec& spec() const noexcept { return spec_; }
  const SampleSet& samples() const noexcept { return samples_; }

 private:
  KernelSpec spec_;
  SampleSet samples_;
  // proper gamma: shape a_i = 1 + X_i/sigma^2 and its combined log constant
  std::vector<double> shape_;
  std::vector<double> log_norm_;
};

inline double evaluate(const DensityEstimate& estimate, double x) {
  return estimate(x);
}

// Classical symmetric-kernel estimator (1/nh) sum K((X_i - x)/h).
double standard_kde(const SampleSet& samples,
                    const std::function<double(double)>& kernel, double h,
                    double x);

enum class ShiftVariant { balloon, sample_smoothing };

// Location-shifted estimator with evaluation-point (balloon) or sample-point
// (sample smoothing) bandwidth and shift functions. kernel is a symmetric
// order-p density-like function on the real line; moments must come from
// kernel_moments(kernel).
struct ShiftedEstimator {
  ShiftVariant variant;
  std::function<double(double)> kernel;
  KernelMoments moments;
  std::function<double(double)> bandwidth;  // must stay positive
  std::function<double(double)> shift;
  double shift_cap = 1e6;  // |shift| above this is treated as a domain error
};

double evaluate_shifted(const ShiftedEstimator& est, const SampleSet& samples,
                        double x);

std::vector<double> geometric_grid(double lo, double hi, std::size_t count);
std::vector<double> arithmetic_grid(double lo, double hi, std::size_t count);

}  // namespace akde
