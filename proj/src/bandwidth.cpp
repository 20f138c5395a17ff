#include "akde/bandwidth.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "akde/asymptotics.hpp"
#include "akde/errors.hpp"
#include "akde/quadrature.hpp"
#include "akde/special.hpp"

namespace akde {

double plugin_bandwidth(KernelFamily family, Role role, double mu,
                        double Sigma, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("plugin_bandwidth: n must be positive");
  }
  // Stationary point of sigma^4 E + F/(n sigma): (F / (4 E n))^(1/5).
  const auto [e, f] = mise_coefficients_lognormal(family, role, mu, Sigma);
  return std::pow(f / (4.0 * e * static_cast<double>(n)), 0.2);
}

double plugin_bandwidth(KernelFamily family, Role role,
                        const SampleSet& samples) {
  const LogParams lp = estimate_log_params(samples);
  if (!(lp.sigma > 0.0)) {
    throw std::domain_error(
        "plugin_bandwidth: sample log-spread is zero; fit is degenerate");
  }
  return plugin_bandwidth(family, role, lp.mu, lp.sigma, samples.size());
}

double gamma_overlap(double xi, double xj, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("gamma_overlap: sigma must be positive");
  }
  if (!(xi >= 0.0) || !(xj >= 0.0)) {
    throw std::domain_error("gamma_overlap: anchors must be nonnegative");
  }
  const double s2 = sigma * sigma;
  const double joint = 1.0 + (xi + xj) / s2;
  constexpr double kLog2 = 0.69314718055994530941723212145817657;
  return std::exp(log_gamma(joint) - joint * kLog2 -
                  log_gamma(1.0 + xi / s2) - log_gamma(1.0 + xj / s2) -
                  2.0 * std::log(sigma));
}

namespace {

// Integral of the squared estimate over its support, truncated where the
// squared density falls below 1e-14 of its peak.
double integrate_squared_estimate(const DensityEstimate& est) {
  const auto& samples = est.samples();
  const double dmin = est.spec().domain_min();
  double lo = samples.min() / 64.0;
  if (dmin > 0.0) {
    // keep strictly inside the domain; the estimate is finite there
    lo = dmin * (1.0 + 1e-9);
  }
  double hi = samples.max() * 64.0;
  auto sq = [&](double x) {
    const double v = est(x);
    return v * v;
  };
  // probe a geometric envelope for the peak, then push the cutoff outward
  double peak = 0.0;
  {
    const auto probe = geometric_grid(std::max(lo, 1e-300), hi, 256);
    for (double x : probe) {
      peak = std::max(peak, sq(x));
    }
  }
  if (!(peak > 0.0)) {
    throw NonConvergence("integrate_squared_estimate: estimate is zero on probe");
  }
  const double cutoff = 1e-14 * peak;
  for (int step = 0; step < 60 && sq(hi) > cutoff; ++step) {
    hi *= 2.0;
  }
  if (dmin == 0.0) {
    // the density can stay positive at the origin (improper gamma); walk the
    // lower end down and fall back to 0 when no negligible point exists
    while (lo > 1e-12 && sq(lo) > cutoff) {
      lo *= 0.5;
    }
    if (sq(lo) > cutoff) {
      lo = 0.0;
    }
  }
  QuadratureOptions opt;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-8;
  if (lo == 0.0) {
    return integrate(sq, 0.0, hi, opt).value;
  }
  return integrate(sq, lo, hi, opt).value;
}

}  // namespace

double loo_cv_score(const KernelSpec& spec, const SampleSet& samples,
                    Execution exec) {
  if (spec.family == KernelFamily::gaussian) {
    throw UnsupportedAsymptotics(
        "cross-validation needs a weight-form kernel; the gaussian baseline "
        "has none");
  }
  const std::size_t n = samples.size();
  if (n < 2) {
    throw InsufficientSamples("need at least two samples");
  }
  const auto& values = samples.values();
  const double nd = static_cast<double>(n);

  double square_term;
  double holdout_sum;
  if (spec.family == KernelFamily::gamma && spec.role == Role::proper) {
    // Closed forms: pairwise overlaps for the square, cached shapes for the
    // holdout sum.
    const double s2 = spec.sigma * spec.sigma;
    const double log_scale = std::log(s2);
    constexpr double kLog2 = 0.69314718055994530941723212145817657;
    std::vector<double> shape(n), log_norm(n), lg(n);
    for (std::size_t i = 0; i < n; ++i) {
      shape[i] = 1.0 + values[i] / s2;
      lg[i] = log_gamma(shape[i]);
      log_norm[i] = shape[i] * log_scale + lg[i];
    }
    const double log_sigma2 = 2.0 * std::log(spec.sigma);
    square_term =
        blocked_sum(n, exec,
                    [&](std::size_t i) {
                      double row = 0.0;
                      for (std::size_t j = 0; j < i; ++j) {
                        const double joint = shape[i] + shape[j] - 1.0;
                        row += 2.0 * std::exp(log_gamma(joint) -
                                              joint * kLog2 - lg[i] - lg[j] -
                                              log_sigma2);
                      }
                      const double self = 2.0 * shape[i] - 1.0;
                      row += std::exp(log_gamma(self) - self * kLog2 -
                                      2.0 * lg[i] - log_sigma2);
                      return row;
                    },
                    64) /
        (nd * nd);
    const auto& logs = samples.logs();
    const double inv_scale = 1.0 / s2;
    holdout_sum = blocked_sum(n, exec, [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        acc += std::exp((shape[j] - 1.0) * logs[i] - values[i] * inv_scale -
                        log_norm[j]);
      }
      return acc;
    });
  } else {
    DensityEstimate est(spec, samples);
    square_term = integrate_squared_estimate(est);
    holdout_sum = blocked_sum(n, exec, [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        acc += weight(spec, values[j], values[i]);
      }
      return acc;
    });
  }
  return square_term - 2.0 * holdout_sum / (nd * (nd - 1.0));
}

std::vector<double> default_sigma_grid(KernelFamily family, Role role,
                                       const SampleSet& samples) {
  double center = 0.0;
  bool have_center = false;
  try {
    center = plugin_bandwidth(family, role, samples);
    have_center = true;
  } catch (const UnsupportedAsymptotics&) {
  } catch (const std::domain_error&) {
  }
  if (have_center) {
    return geometric_grid(center / 5.0, center * 5.0, 40);
  }
  return geometric_grid(0.01, 2.0, 40);
}

BandwidthProfile cv_profile(KernelFamily family, Role role,
                            const SampleSet& samples,
                            std::vector<double> sigma_grid, Execution exec) {
  if (sigma_grid.empty()) {
    sigma_grid = default_sigma_grid(family, role, samples);
  }
  BandwidthProfile profile;
  profile.sigma = std::move(sigma_grid);
  profile.cv_score.resize(profile.sigma.size());
  // One slot per grid point; the inner pairwise sums parallelize only when
  // this outer loop runs serially (no nested regions), so either way every
  // sum is evaluated in its fixed block order.
  parallel_index(profile.sigma.size(), exec, [&](std::size_t g) {
    profile.cv_score[g] =
        loo_cv_score(KernelSpec(family, role, profile.sigma[g]), samples, exec);
  });
  std::size_t best = 0;
  for (std::size_t g = 1; g < profile.sigma.size(); ++g) {
    if (profile.cv_score[g] < profile.cv_score[best]) {
      best = g;
    }
  }
  profile.cv_argmin = profile.sigma[best];
  try {
    profile.plugin = plugin_bandwidth(family, role, samples);
  } catch (const UnsupportedAsymptotics&) {
  } catch (const std::domain_error&) {
  }
  try {
    const LogParams lp = estimate_log_params(samples);
    if (lp.sigma > 0.0) {
      profile.asymptotic_mise.resize(profile.sigma.size());
      for (std::size_t g = 0; g < profile.sigma.size(); ++g) {
        profile.asymptotic_mise[g] = asymptotic_mise_lognormal(
            family, role, lp.mu, lp.sigma, samples.size(), profile.sigma[g]);
      }
    }
  } catch (const UnsupportedAsymptotics&) {
    profile.asymptotic_mise.clear();
  }
  return profile;
}

}  // namespace akde
