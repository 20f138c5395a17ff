#include "akde/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "akde/errors.hpp"
#include "akde/quadrature.hpp"
#include "akde/special.hpp"

namespace akde {

ReferenceDensity::ReferenceDensity(LogNormalRef ref)
    : exact_(ref), pdf_([ref](double x) { return ref.pdf(x); }) {}

ReferenceDensity::ReferenceDensity(std::function<double(double)> pdf)
    : pdf_(std::move(pdf)) {}

double ReferenceDensity::pdf(double x) const { return pdf_(x); }

double ReferenceDensity::derivative(int order, double x) const {
  if (order == 0) {
    return pdf_(x);
  }
  if (exact_) {
    return exact_->derivative(order, x);
  }
  return fd_derivative(pdf_, x, order);
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) {
    b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return b;
}

// Symmetric difference for the order-th derivative, O(h^2), offsets
// (order/2 - m) h; half-integer offsets when order is odd.
double central_stencil(const std::function<double(double)>& g, double x,
                       int order, double h) {
  double acc = 0.0;
  for (int m = 0; m <= order; ++m) {
    const double coef = (m % 2 == 0 ? 1.0 : -1.0) * binomial(order, m);
    const double offset = (0.5 * order - m) * h;
    acc += coef * g(x + offset);
  }
  return acc / std::pow(h, order);
}

}  // namespace

double fd_derivative(const std::function<double(double)>& g, double x,
                     int order, double* noise_out) {
  if (order == 0) {
    if (noise_out) *noise_out = 0.0;
    return g(x);
  }
  if (order < 0 || order > 16) {
    throw std::invalid_argument("fd_derivative: order out of range");
  }
  // Ridders ladder: shrink the step geometrically, extrapolate the h^2
  // series, keep the entry with the smallest disagreement.
  constexpr int kLevels = 14;
  constexpr double kShrink = 1.4142135623730951;
  double h = 0.4 * std::max(1.0, std::abs(x));
  if (x > 0.0) {
    // keep the whole stencil strictly positive
    const double reach = 0.5 * order + 1.0;
    h = std::min(h, 0.9 * x / reach);
  }
  if (!(h > 0.0)) {
    throw std::invalid_argument("fd_derivative: cannot place stencil");
  }
  std::vector<std::vector<double>> tab(kLevels);
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kLevels; ++i) {
    tab[i].resize(i + 1);
    tab[i][0] = central_stencil(g, x, order, h);
    if (!std::isfinite(tab[i][0])) {
      throw NonConvergence("fd_derivative: stencil produced a non-finite value");
    }
    double fac = kShrink * kShrink;
    for (int j = 1; j <= i; ++j) {
      tab[i][j] = (tab[i][j - 1] * fac - tab[i - 1][j - 1]) / (fac - 1.0);
      fac *= kShrink * kShrink;
      const double errt = std::max(std::abs(tab[i][j] - tab[i][j - 1]),
                                   std::abs(tab[i][j] - tab[i - 1][j - 1]));
      if (errt <= best_err) {
        best_err = errt;
        best = tab[i][j];
      }
    }
    if (i > 1 &&
        std::abs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * best_err &&
        std::isfinite(best)) {
      break;  // rounding has taken over
    }
    h /= kShrink;
  }
  if (!std::isfinite(best)) {
    throw NonConvergence("fd_derivative: extrapolation failed");
  }
  if (noise_out) {
    *noise_out = best_err;
  }
  return best;
}

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) {
    f *= static_cast<double>(i);
  }
  return f;
}

constexpr double kSeriesCutoff = 1e-12;

}  // namespace

double balloon_coefficient(int k, double x, const ReferenceDensity& f,
                           const std::function<double(double)>& bandwidth,
                           const std::function<double(double)>& shift, int p,
                           int terms) {
  if (k < 0 || p < 1 || terms < k) {
    throw std::invalid_argument("balloon_coefficient: bad series bounds");
  }
  const double h = bandwidth(x);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("balloon_coefficient: bandwidth must be positive");
  }
  const double hp_delta = std::pow(h, p) * shift(x);
  double sum = 0.0;
  int tiny_run = 0;
  for (int j = k; j <= terms; ++j) {
    const double term = f.derivative(j, x) * std::pow(hp_delta, j - k) /
                        (factorial(k) * factorial(j - k));
    sum += term;
    // A single tiny term is not convergence: odd derivatives vanish at a
    // mode, so insist on two negligible terms in a row.
    if (j > k && std::abs(term) < kSeriesCutoff * std::abs(sum)) {
      if (++tiny_run == 2) break;
    } else {
      tiny_run = 0;
    }
  }
  return std::pow(h, k) * sum;
}

double smoothing_coefficient(int k, double x, const ReferenceDensity& f,
                             const std::function<double(double)>& bandwidth,
                             const std::function<double(double)>& shift, int p,
                             int terms) {
  if (k < 0 || p < 1 || terms < k) {
    throw std::invalid_argument("smoothing_coefficient: bad series bounds");
  }
  double sum = 0.0;
  int tiny_run = 0;
  for (int j = k; j <= terms; ++j) {
    const int extra = j - k;
    auto product = [&](double t) {
      const double h = bandwidth(t);
      if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::domain_error(
            "smoothing_coefficient: bandwidth must be positive");
      }
      return f.pdf(t) * std::pow(h, k + p * extra) *
             std::pow(-shift(t), extra);
    };
    double noise = 0.0;
    const double deriv = j == 0 ? product(x) : fd_derivative(product, x, j, &noise);
    const double term = deriv / (factorial(k) * factorial(extra));
    const double scaled_noise = noise / (factorial(k) * factorial(extra));
    sum += term;
    // Noise only matters when it would corrupt the accumulated series.
    if (scaled_noise > std::abs(term) &&
        scaled_noise > 1e-7 * std::abs(sum)) {
      throw NonConvergence(
          "smoothing_coefficient: finite-difference noise exceeds term " +
          std::to_string(j));
    }
    // Same two-in-a-row rule as the balloon series: a lone zero term (odd
    // derivative at a mode) must not end the sum.
    if (j > k && std::abs(term) < kSeriesCutoff * std::abs(sum)) {
      if (++tiny_run == 2) break;
    } else {
      tiny_run = 0;
    }
  }
  return sum;
}

double shifted_bias(ShiftVariant variant, double x, const ReferenceDensity& f,
                    const std::function<double(double)>& bandwidth,
                    const std::function<double(double)>& shift, int p) {
  if (variant == ShiftVariant::balloon) {
    const double h = bandwidth(x);
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::domain_error("shifted_bias: bandwidth must be positive");
    }
    const double hp = std::pow(h, p);
    return hp * shift(x) * f.derivative(1, x) +
           hp / factorial(p) * f.derivative(p, x);
  }
  auto shift_flux = [&](double t) {
    return f.pdf(t) * std::pow(bandwidth(t), p) * shift(t);
  };
  auto spread = [&](double t) {
    return f.pdf(t) * std::pow(bandwidth(t), p);
  };
  return -fd_derivative(shift_flux, x, 1) +
         fd_derivative(spread, x, p) / factorial(p);
}

double shifted_variance(double x, const ReferenceDensity& f,
                        const std::function<double(double)>& bandwidth,
                        double kappa, std::size_t n) {
  const double h = bandwidth(x);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("shifted_variance: bandwidth must be positive");
  }
  if (n == 0) {
    throw std::invalid_argument("shifted_variance: n must be positive");
  }
  return f.pdf(x) * kappa / (static_cast<double>(n) * h);
}

namespace {

[[noreturn]] void no_asymptotics(const KernelSpec& spec) {
  throw UnsupportedAsymptotics(
      std::string("no asymptotic form for ") + family_name(spec.family) +
      " kernel in " + role_name(spec.role) + " role");
}

}  // namespace

double asymptotic_bias(const KernelSpec& spec, double x,
                       const ReferenceDensity& f) {
  if (!spec.asymptotics_supported()) {
    no_asymptotics(spec);
  }
  const double s2 = spec.sigma * spec.sigma;
  const double f1 = f.derivative(1, x);
  const double f2 = f.derivative(2, x);
  switch (spec.family) {
    case KernelFamily::gamma:
      if (spec.role == Role::improper) {
        return s2 * (f1 + 0.5 * x * f2);
      }
      return 0.5 * s2 * x * f2;
    case KernelFamily::lognormal:
    case KernelFamily::birnbaum_saunders:
      if (spec.role == Role::improper) {
        return 0.5 * s2 * x * (f1 + x * f2);
      }
      return 0.5 * s2 * (f.pdf(x) + 3.0 * x * f1 + x * x * f2);
    case KernelFamily::inverse_gaussian:
      return 0.5 * s2 * x * x * x * f2;
    case KernelFamily::reciprocal_inverse_gaussian:
      if (spec.role == Role::improper) {
        return 0.5 * s2 * x * f2;
      }
      return s2 * (f1 + 0.5 * x * f2);
    case KernelFamily::gaussian:
      break;
  }
  no_asymptotics(spec);
}

double asymptotic_variance(const KernelSpec& spec, double x,
                           const ReferenceDensity& f, std::size_t n) {
  if (!spec.asymptotics_supported()) {
    no_asymptotics(spec);
  }
  if (n == 0) {
    throw std::invalid_argument("asymptotic_variance: n must be positive");
  }
  if (!(x > 0.0)) {
    throw std::domain_error("asymptotic_variance: x must be positive");
  }
  const double fx = f.pdf(x);
  const double ns = static_cast<double>(n) * spec.sigma;
  const double sqrt_pi = std::sqrt(kPi);
  switch (spec.family) {
    case KernelFamily::gamma:
    case KernelFamily::reciprocal_inverse_gaussian:
      return fx / (2.0 * ns * sqrt_pi * std::sqrt(x));
    case KernelFamily::lognormal:
    case KernelFamily::birnbaum_saunders:
      return fx / (2.0 * sqrt_pi * ns * x);
    case KernelFamily::inverse_gaussian:
      return fx / (2.0 * sqrt_pi * ns * x * std::sqrt(x));
    case KernelFamily::gaussian:
      break;
  }
  no_asymptotics(spec);
}

double asymptotic_mse(const KernelSpec& spec, double x,
                      const ReferenceDensity& f, std::size_t n) {
  const double b = asymptotic_bias(spec, x, f);
  return b * b + asymptotic_variance(spec, x, f, n);
}

MiseCoefficients mise_coefficients_lognormal(KernelFamily family, Role role,
                                             double mu, double Sigma) {
  if (!(Sigma > 0.0) || !std::isfinite(Sigma) || !std::isfinite(mu)) {
    throw std::invalid_argument(
        "mise_coefficients_lognormal: Sigma must be positive");
  }
  const KernelSpec probe(family, role, 1.0);
  if (!probe.asymptotics_supported()) {
    no_asymptotics(probe);
  }
  const double S2 = Sigma * Sigma;
  const double S4 = S2 * S2;
  const double sqrt_pi = std::sqrt(kPi);
  const double denom = 128.0 * sqrt_pi * S4 * Sigma;
  double e = 0.0;
  double f = 0.0;
  switch (family) {
    case KernelFamily::gamma:
    case KernelFamily::reciprocal_inverse_gaussian: {
      // gamma improper pairs with RIG proper, and vice versa
      const bool heavy = (family == KernelFamily::gamma) ==
                         (role == Role::improper);
      const double poly = heavy ? 12.0 + 20.0 * S2 + 9.0 * S4
                                : 12.0 + 4.0 * S2 + S4;
      e = std::exp(2.25 * S2 - 3.0 * mu) * poly / denom;
      f = std::exp(0.125 * S2 - 0.5 * mu) / (2.0 * sqrt_pi);
      break;
    }
    case KernelFamily::lognormal:
    case KernelFamily::birnbaum_saunders: {
      e = std::exp(0.25 * S2 - mu) * (12.0 + 4.0 * S2 + S4) / denom;
      f = std::exp(0.5 * S2 - mu) / (2.0 * sqrt_pi);
      break;
    }
    case KernelFamily::inverse_gaussian: {
      e = std::exp(mu + 0.25 * S2) * (12.0 + 68.0 * S2 + 225.0 * S4) / denom;
      f = std::exp(1.125 * S2 - 1.5 * mu) / (2.0 * sqrt_pi);
      break;
    }
    case KernelFamily::gaussian:
      no_asymptotics(probe);
  }
  return {e, f};
}

double asymptotic_mise_lognormal(KernelFamily family, Role role, double mu,
                                 double Sigma, std::size_t n, double sigma) {
  if (!(sigma > 0.0) || n == 0) {
    throw std::invalid_argument(
        "asymptotic_mise_lognormal: need sigma > 0 and n > 0");
  }
  const auto [e, f] = mise_coefficients_lognormal(family, role, mu, Sigma);
  const double s2 = sigma * sigma;
  return s2 * s2 * e + f / (static_cast<double>(n) * sigma);
}

double exact_balloon_mean(const std::function<double(double)>& kernel,
                          const std::function<double(double)>& bandwidth,
                          const std::function<double(double)>& shift, int p,
                          const std::function<double(double)>& pdf, double x) {
  const double h = bandwidth(x);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("exact_balloon_mean: bandwidth must be positive");
  }
  const double center = x + std::pow(h, p) * shift(x);
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  return integrate_real(
             [&](double z) { return kernel(z) * pdf(center + h * z); }, opt)
      .value;
}

double exact_smoothing_mean(const std::function<double(double)>& kernel,
                            const std::function<double(double)>& bandwidth,
                            const std::function<double(double)>& shift, int p,
                            const std::function<double(double)>& pdf,
                            double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("exact_smoothing_mean: x must be positive");
  }
  auto standardized = [&](double y) {
    const double h = bandwidth(y);
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::domain_error(
          "exact_smoothing_mean: bandwidth must be positive");
    }
    return (y - x + std::pow(h, p) * shift(y)) / h;
  };
  // The change of variables behind the expansion needs the standardized
  // argument to be monotone in y; scan a wide geometric envelope around x.
  {
    const double lo = 1e-4 * std::min(1.0, x);
    const double hi = 1e4 * std::max(1.0, x);
    const auto ys = geometric_grid(lo, hi, 600);
    double prev = standardized(ys[0]);
    int direction = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      const double cur = standardized(ys[i]);
      const int step = cur > prev ? 1 : (cur < prev ? -1 : 0);
      if (step == 0 || (direction != 0 && step != direction)) {
        throw MonotonicityViolation(
            "standardized kernel argument reverses direction near y = " +
            std::to_string(ys[i]));
      }
      direction = step;
      prev = cur;
    }
  }
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  return integrate_positive(
             [&](double y) {
               const double h = bandwidth(y);
               return kernel(standardized(y)) * pdf(y) / h;
             },
             0.0, opt)
      .value;
}

}  // namespace akde
