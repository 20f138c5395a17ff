#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "akde/asymptotics.hpp"
#include "akde/errors.hpp"
#include "akde/kernels.hpp"
#include "akde/lognormal.hpp"
#include "akde/quadrature.hpp"
#include "akde/special.hpp"
#include "reference_values.hpp"

using namespace akde;

namespace {

double rel_err(double got, double expected) {
  return std::abs(got - expected) / std::abs(expected);
}

const std::pair<KernelFamily, Role> kSupportedCells[] = {
    {KernelFamily::gamma, Role::improper},
    {KernelFamily::gamma, Role::proper},
    {KernelFamily::lognormal, Role::improper},
    {KernelFamily::lognormal, Role::proper},
    {KernelFamily::birnbaum_saunders, Role::improper},
    {KernelFamily::birnbaum_saunders, Role::proper},
    {KernelFamily::inverse_gaussian, Role::improper},
    {KernelFamily::reciprocal_inverse_gaussian, Role::improper},
    {KernelFamily::reciprocal_inverse_gaussian, Role::proper},
};

// Exact first two moments of the estimator at x under sampling density f:
// mean = int W(y, x) f(y) dy, and n * variance = int W^2 f dy - mean^2.
struct ExactMoments {
  double mean;
  double n_variance;
};

ExactMoments exact_weight_moments(const KernelSpec& spec,
                                  const LogNormalRef& truth, double x) {
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  // stay strictly inside the weight's domain in the sampling argument
  double lo = 0.0;
  if (spec.family == KernelFamily::reciprocal_inverse_gaussian &&
      spec.role == Role::proper) {
    lo = spec.sigma * spec.sigma * (1.0 + 1e-12);
  }
  const double mean = integrate_positive([&](double y) {
                        return weight(spec, y, x) * truth.pdf(y);
                      }, lo, opt).value;
  const double second = integrate_positive([&](double y) {
                          const double w = weight(spec, y, x);
                          return w * w * truth.pdf(y);
                        }, lo, opt).value;
  return {mean, second - mean * mean};
}

}  // namespace

TEST_CASE("finite differences reproduce exact log-normal derivatives") {
  const LogNormalRef ref(1.0, 1.0);
  auto pdf = [&](double t) { return ref.pdf(t); };
  for (int order = 1; order <= 3; ++order) {
    for (double x : {0.2, 1.0, 3.0, 10.0}) {
      const double exact = ref.derivative(order, x);
      double noise = 0.0;
      const double got = fd_derivative(pdf, x, order, &noise);
      if (exact == 0.0) {
        // x = 1 is the mode of LN(1,1), so f'(1) vanishes exactly.
        CHECK(std::abs(got) < 1e-12);
      } else {
        CHECK(rel_err(got, exact) < 1e-7);
      }
      CHECK(noise >= 0.0);
    }
  }
  // Fourth derivatives stay tight away from the origin but are truncation
  // limited near it, where the sixth derivative that drives the step error
  // grows much faster than the fourth.
  for (double x : {3.0, 10.0}) {
    CHECK(rel_err(fd_derivative(pdf, x, 4), ref.derivative(4, x)) < 1e-7);
  }
  for (double x : {0.2, 1.0}) {
    CHECK(rel_err(fd_derivative(pdf, x, 4), ref.derivative(4, x)) < 0.03);
  }
}

TEST_CASE("reference density falls back to finite differences") {
  const LogNormalRef ref(0.4, 0.7);
  const ReferenceDensity exact(ref);
  const ReferenceDensity numeric([ref](double t) { return ref.pdf(t); });
  CHECK(exact.pdf(1.3) == ref.pdf(1.3));
  CHECK(exact.derivative(0, 1.3) == ref.pdf(1.3));
  for (int order : {1, 2, 3}) {
    CHECK(rel_err(numeric.derivative(order, 1.3),
                  exact.derivative(order, 1.3)) < 1e-7);
  }
}

TEST_CASE("balloon coefficients collapse to a shifted Taylor identity") {
  // With constant spread and shift the k-th coefficient is exactly
  // h^k f^(k)(x + h^p delta) / k!.
  const LogNormalRef ref(1.0, 1.0);
  const ReferenceDensity f(ref);
  const double h = 0.3;
  const double delta = 0.4;
  auto bw = [h](double) { return h; };
  auto shift = [delta](double) { return delta; };
  const double x = 1.4;
  const double moved = x + h * h * delta;
  const double a0 = balloon_coefficient(0, x, f, bw, shift, 2, 16);
  CHECK(rel_err(a0, ref.pdf(moved)) < 1e-12);
  const double a1 = balloon_coefficient(1, x, f, bw, shift, 2, 16);
  CHECK(rel_err(a1, h * ref.derivative(1, moved)) < 1e-11);
  const double a2 = balloon_coefficient(2, x, f, bw, shift, 2, 16);
  CHECK(rel_err(a2, 0.5 * h * h * ref.derivative(2, moved)) < 1e-10);
}

TEST_CASE("smoothing coefficients collapse to the opposite Taylor shift") {
  // Constant maps move the argument the other way: B_0 = f(x - h^p delta),
  // B_1 = h f'(x - h^p delta).
  const LogNormalRef ref(1.0, 1.0);
  const ReferenceDensity f(ref);
  const double h = 0.3;
  const double delta = 0.4;
  auto bw = [h](double) { return h; };
  auto shift = [delta](double) { return delta; };
  const double x = 1.4;
  const double moved = x - h * h * delta;
  const double b0 = smoothing_coefficient(0, x, f, bw, shift, 2, 10);
  CHECK(rel_err(b0, ref.pdf(moved)) < 1e-6);
  const double b1 = smoothing_coefficient(1, x, f, bw, shift, 2, 10);
  CHECK(rel_err(b1, h * ref.derivative(1, moved)) < 1e-6);
}

TEST_CASE("leading bias of the shifted estimators matches quadrature") {
  const LogNormalRef ref(1.0, 1.0);
  const ReferenceDensity f(ref);
  auto pdf = [&](double t) { return ref.pdf(t); };
  auto kernel = [](double z) { return normal_pdf(z); };
  const double x = 1.3;
  SUBCASE("balloon, constant spread") {
    const double sigma = 0.05;
    auto bw = [sigma](double) { return sigma; };
    auto shift = [](double) { return 0.3; };
    const double exact = exact_balloon_mean(kernel, bw, shift, 2, pdf, x) -
                         ref.pdf(x);
    const double asym = shifted_bias(ShiftVariant::balloon, x, f, bw, shift, 2);
    CHECK(rel_err(exact, asym) < 0.02);
  }
  SUBCASE("sample smoothing, varying spread and shift") {
    const double sigma = 0.05;
    auto bw = [sigma](double u) { return sigma * std::sqrt(u + 0.04); };
    auto shift = [](double u) { return 0.1 * u; };
    const double exact = exact_smoothing_mean(kernel, bw, shift, 2, pdf, x) -
                         ref.pdf(x);
    const double asym =
        shifted_bias(ShiftVariant::sample_smoothing, x, f, bw, shift, 2);
    CHECK(rel_err(exact, asym) < 0.05);
  }
}

TEST_CASE("balloon mean oracle agrees with a closed form") {
  // Exponential truth far from the boundary: the smoothed mean is
  // e^{-x} e^{h^2/2} up to a negligible truncation tail.
  auto pdf = [](double t) { return t > 0.0 ? std::exp(-t) : 0.0; };
  auto kernel = [](double z) { return normal_pdf(z); };
  const double h = 0.2;
  const double got = exact_balloon_mean(kernel, [h](double) { return h; },
                                        [](double) { return 0.0; }, 2, pdf, 5.0);
  CHECK(rel_err(got, std::exp(-5.0 + 0.5 * h * h)) < 1e-9);
}

TEST_CASE("smoothing mean oracle matches the balloon oracle for constant maps") {
  const LogNormalRef ref(0.5, 0.8);
  auto pdf = [&](double t) { return ref.pdf(t); };
  auto kernel = [](double z) { return normal_pdf(z); };
  auto bw = [](double) { return 0.25; };
  auto shift = [](double) { return 0.0; };
  for (double x : {0.8, 1.9}) {
    const double balloon = exact_balloon_mean(kernel, bw, shift, 2, pdf, x);
    const double smoothing = exact_smoothing_mean(kernel, bw, shift, 2, pdf, x);
    CHECK(rel_err(smoothing, balloon) < 1e-8);
  }
}

TEST_CASE("smoothing mean oracle rejects a non-monotone standardization") {
  // Spread growing like y^{3/2} turns the standardized argument around at
  // y = 3x; the expansion's change of variables is invalid there.
  const LogNormalRef ref(1.0, 1.0);
  auto pdf = [&](double t) { return ref.pdf(t); };
  auto kernel = [](double z) { return normal_pdf(z); };
  auto bw = [](double y) { return 0.3 * y * std::sqrt(y); };
  auto shift = [](double) { return 0.0; };
  CHECK_THROWS_AS(exact_smoothing_mean(kernel, bw, shift, 2, pdf, 1.0),
                  MonotonicityViolation);
  try {
    exact_smoothing_mean(kernel, bw, shift, 2, pdf, 1.0);
  } catch (const MonotonicityViolation& e) {
    CHECK(std::string(e.what()).find("reverses") != std::string::npos);
  }
}

TEST_CASE("closed-form bias converges to the smoothed weight mean") {
  const LogNormalRef truth(1.0, 1.0);
  const ReferenceDensity f(truth);
  const double x = 1.3;
  for (const auto& [family, role] : kSupportedCells) {
    CAPTURE(family_name(family));
    CAPTURE(role_name(role));
    double prev_dev = 0.0;
    bool have_prev = false;
    for (double sigma : {0.1, 0.05}) {
      const KernelSpec spec(family, role, sigma);
      const auto exact = exact_weight_moments(spec, truth, x);
      const double bias_exact = exact.mean - truth.pdf(x);
      const double bias_asym = asymptotic_bias(spec, x, f);
      const double dev = std::abs(bias_exact / bias_asym - 1.0);
      if (sigma == 0.05) {
        CHECK(dev < 0.08);
        if (have_prev && prev_dev > 0.01) {
          CHECK(dev < 0.7 * prev_dev);
        }
      }
      prev_dev = dev;
      have_prev = true;
    }
  }
}

TEST_CASE("closed-form variance converges to the exact weight variance") {
  const LogNormalRef truth(1.0, 1.0);
  const ReferenceDensity f(truth);
  const double x = 1.3;
  const std::size_t n = 1000;
  for (const auto& [family, role] : kSupportedCells) {
    CAPTURE(family_name(family));
    CAPTURE(role_name(role));
    double prev_dev = 0.0;
    bool have_prev = false;
    for (double sigma : {0.1, 0.05}) {
      const KernelSpec spec(family, role, sigma);
      const auto exact = exact_weight_moments(spec, truth, x);
      const double var_exact = exact.n_variance / static_cast<double>(n);
      const double var_asym = asymptotic_variance(spec, x, f, n);
      const double dev = std::abs(var_exact / var_asym - 1.0);
      if (sigma == 0.05) {
        CHECK(dev < 0.12);
        if (have_prev) {
          CHECK(dev < prev_dev + 1e-3);
        }
      }
      prev_dev = dev;
      have_prev = true;
    }
  }
}

TEST_CASE("mean squared error combines bias and variance") {
  const LogNormalRef truth(1.0, 1.0);
  const ReferenceDensity f(truth);
  const KernelSpec spec(KernelFamily::gamma, Role::improper, 0.2);
  const double b = asymptotic_bias(spec, 1.7, f);
  const double v = asymptotic_variance(spec, 1.7, f, 500);
  CHECK(asymptotic_mse(spec, 1.7, f, 500) == b * b + v);
}

TEST_CASE("unsupported cells refuse to produce asymptotics") {
  const LogNormalRef truth(1.0, 1.0);
  const ReferenceDensity f(truth);
  const KernelSpec ig_prop(KernelFamily::inverse_gaussian, Role::proper, 0.2);
  CHECK_THROWS_AS(asymptotic_bias(ig_prop, 1.0, f), UnsupportedAsymptotics);
  CHECK_THROWS_AS(asymptotic_variance(ig_prop, 1.0, f, 100),
                  UnsupportedAsymptotics);
  CHECK_THROWS_AS(asymptotic_mse(ig_prop, 1.0, f, 100), UnsupportedAsymptotics);
  CHECK_THROWS_AS(mise_coefficients_lognormal(KernelFamily::inverse_gaussian,
                                              Role::proper, 1.0, 1.0),
                  UnsupportedAsymptotics);
  CHECK_THROWS_AS(mise_coefficients_lognormal(KernelFamily::gaussian,
                                              Role::improper, 1.0, 1.0),
                  UnsupportedAsymptotics);
  const KernelSpec gauss(KernelFamily::gaussian, Role::improper, 0.2);
  CHECK_THROWS_AS(asymptotic_bias(gauss, 1.0, f), UnsupportedAsymptotics);
}

TEST_CASE("integrated-error coefficients match frozen pins") {
  const auto c = mise_coefficients_lognormal(KernelFamily::gamma,
                                             Role::improper, 1.0, 1.0);
  CHECK(rel_err(c.e, ref::kMiseEGammaImproper_1_1) < 1e-13);
  CHECK(rel_err(c.f, ref::kMiseFGamma_1_1) < 1e-13);
}

TEST_CASE("integrated-error coefficients agree with direct quadrature") {
  // At sigma = 1 the closed-form bias is exactly the bias factor, so its
  // squared integral must equal E; n * sigma * variance integrates to F.
  struct Cell {
    KernelFamily family;
    Role role;
    double mu;
    double Sigma;
  };
  const Cell cells[] = {
      {KernelFamily::lognormal, Role::improper, 0.3, 0.9},
      {KernelFamily::gamma, Role::proper, 1.0, 1.0},
      {KernelFamily::inverse_gaussian, Role::improper, 1.0, 1.0},
      {KernelFamily::reciprocal_inverse_gaussian, Role::proper, -0.2, 0.7},
  };
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-9;
  for (const auto& cell : cells) {
    CAPTURE(family_name(cell.family));
    CAPTURE(role_name(cell.role));
    const LogNormalRef truth(cell.mu, cell.Sigma);
    const ReferenceDensity f(truth);
    const KernelSpec unit(cell.family, cell.role, 1.0);
    const double e_quad = integrate_positive([&](double x) {
                            const double b = asymptotic_bias(unit, x, f);
                            return b * b;
                          }, 0.0, opt).value;
    const double f_quad = integrate_positive([&](double x) {
                            return asymptotic_variance(unit, x, f, 1);
                          }, 0.0, opt).value;
    const auto c = mise_coefficients_lognormal(cell.family, cell.role, cell.mu,
                                               cell.Sigma);
    CHECK(rel_err(e_quad, c.e) < 1e-7);
    CHECK(rel_err(f_quad, c.f) < 1e-7);
  }
}

TEST_CASE("asymptotic integrated error is stationary at the plugin point") {
  const auto c = mise_coefficients_lognormal(KernelFamily::gamma,
                                             Role::improper, 1.0, 1.0);
  const std::size_t n = 300;
  const double star = std::pow(c.f / (4.0 * c.e * static_cast<double>(n)), 0.2);
  const double at = asymptotic_mise_lognormal(KernelFamily::gamma,
                                              Role::improper, 1.0, 1.0, n, star);
  for (double bump : {0.999, 1.001}) {
    CHECK(asymptotic_mise_lognormal(KernelFamily::gamma, Role::improper, 1.0,
                                    1.0, n, star * bump) > at);
  }
  CHECK(at == doctest::Approx(std::pow(star, 4) * c.e +
                              c.f / (static_cast<double>(n) * star))
                  .epsilon(1e-15));
}

TEST_CASE("shifted variance follows the spread in the denominator") {
  const LogNormalRef truth(1.0, 1.0);
  const ReferenceDensity f(truth);
  auto bw = [](double u) { return 0.1 * std::sqrt(u); };
  const double x = 2.5;
  const double kappa = ref::kGaussKappa;
  const double v = shifted_variance(x, f, bw, kappa, 400);
  CHECK(v == doctest::Approx(truth.pdf(x) * kappa / (400.0 * bw(x)))
                 .epsilon(1e-15));
  CHECK_THROWS_AS(shifted_variance(x, f, [](double) { return 0.0; }, kappa, 400),
                  std::domain_error);
  CHECK_THROWS_AS(shifted_variance(x, f, bw, kappa, 0), std::invalid_argument);
}
