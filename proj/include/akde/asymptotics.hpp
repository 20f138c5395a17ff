#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "akde/estimators.hpp"
#include "akde/kernels.hpp"
#include "akde/lognormal.hpp"

namespace akde {

// Differentiable density handle for the expansion formulas. Either wraps
// exact derivatives (log-normal) or falls back to extrapolated central
// differences of a plain pdf.
class ReferenceDensity {
 public:
  explicit ReferenceDensity(LogNormalRef ref);
  explicit ReferenceDensity(std::function<double(double)> pdf);

  double pdf(double x) const;
  double derivative(int order, double x) const;  // order 0 = pdf

 private:
  std::optional<LogNormalRef> exact_;
  std::function<double(double)> pdf_;
};

// order-th derivative of g at x by central differences with Ridders
// extrapolation over a shrinking step ladder. noise_out, when given, receives
// the extrapolation disagreement, an a-posteriori error estimate. Stencil
// points stay positive when x > 0. Throws NonConvergence when the ladder
// cannot produce a finite value.
double fd_derivative(const std::function<double(double)>& g, double x,
                     int order, double* noise_out = nullptr);

// Expansion coefficients of the two shifted estimators. p is the kernel
// order; the series over the remaining derivative orders is truncated at
// j = terms or earlier once a term falls below 1e-12 of the running sum.
// Balloon coefficients need derivatives at x only; sample-smoothing
// coefficients differentiate products of f, bandwidth, and shift, and raise
// NonConvergence when finite-difference noise swamps a term that matters.
double balloon_coefficient(int k, double x, const ReferenceDensity& f,
                           const std::function<double(double)>& bandwidth,
                           const std::function<double(double)>& shift, int p,
                           int terms);
double smoothing_coefficient(int k, double x, const ReferenceDensity& f,
                             const std::function<double(double)>& bandwidth,
                             const std::function<double(double)>& shift, int p,
                             int terms);

// Leading bias of the shifted estimators and the shared leading variance
// f(x) kappa / (n h(x)).
double shifted_bias(ShiftVariant variant, double x, const ReferenceDensity& f,
                    const std::function<double(double)>& bandwidth,
                    const std::function<double(double)>& shift, int p);
double shifted_variance(double x, const ReferenceDensity& f,
                        const std::function<double(double)>& bandwidth,
                        double kappa, std::size_t n);

// Closed-form leading bias and variance for the weight-form estimators.
// Raise UnsupportedAsymptotics where no column exists (proper inverse
// Gaussian, gaussian baseline).
double asymptotic_bias(const KernelSpec& spec, double x,
                       const ReferenceDensity& f);
double asymptotic_variance(const KernelSpec& spec, double x,
                           const ReferenceDensity& f, std::size_t n);
double asymptotic_mse(const KernelSpec& spec, double x,
                      const ReferenceDensity& f, std::size_t n);

// Weighted MISE against a log-normal truth: sigma^4 E + F / (n sigma).
struct MiseCoefficients {
  double e;
  double f;
};
MiseCoefficients mise_coefficients_lognormal(KernelFamily family, Role role,
                                             double mu, double Sigma);
double asymptotic_mise_lognormal(KernelFamily family, Role role, double mu,
                                 double Sigma, std::size_t n, double sigma);

// Quadrature oracles for the exact smoothed mean of the shifted estimators.
// The sample-smoothing oracle first checks that the standardized kernel
// argument is monotone in the sample coordinate and raises
// MonotonicityViolation otherwise.
double exact_balloon_mean(const std::function<double(double)>& kernel,
                          const std::function<double(double)>& bandwidth,
                          const std::function<double(double)>& shift, int p,
                          const std::function<double(double)>& pdf, double x);
double exact_smoothing_mean(const std::function<double(double)>& kernel,
                            const std::function<double(double)>& bandwidth,
                            const std::function<double(double)>& shift, int p,
                            const std::function<double(double)>& pdf,
                            double x);

}  // namespace akde
