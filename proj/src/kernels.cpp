#include "akde/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "akde/quadrature.hpp"
#include "akde/special.hpp"

namespace akde {

const char* family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::gamma: return "gamma";
    case KernelFamily::lognormal: return "lognormal";
    case KernelFamily::birnbaum_saunders: return "birnbaum-saunders";
    case KernelFamily::inverse_gaussian: return "inverse-gaussian";
    case KernelFamily::reciprocal_inverse_gaussian: return "reciprocal-inverse-gaussian";
    case KernelFamily::gaussian: return "gaussian";
  }
  return "?";
}

const char* role_name(Role role) {
  return role == Role::improper ? "improper" : "proper";
}

KernelFamily parse_family(const std::string& name) {
  if (name == "gamma") return KernelFamily::gamma;
  if (name == "lognormal" || name == "ln") return KernelFamily::lognormal;
  if (name == "birnbaum-saunders" || name == "bs") return KernelFamily::birnbaum_saunders;
  if (name == "inverse-gaussian" || name == "ig") return KernelFamily::inverse_gaussian;
  if (name == "reciprocal-inverse-gaussian" || name == "rig") return KernelFamily::reciprocal_inverse_gaussian;
  if (name == "gaussian") return KernelFamily::gaussian;
  throw std::invalid_argument("unknown kernel family: " + name);
}

Role parse_role(const std::string& name) {
  if (name == "improper") return Role::improper;
  if (name == "proper") return Role::proper;
  throw std::invalid_argument("unknown role: " + name);
}

namespace {

void require(bool ok, const char* message) {
  if (!ok) {
    throw std::domain_error(message);
  }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764;

}  // namespace

double pdf_gamma(double t, double shape, double scale) {
  require(positive_finite(shape) && positive_finite(scale),
          "pdf_gamma: shape and scale must be positive");
  if (t < 0.0) return 0.0;
  if (t == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return 1.0 / scale;
    return std::numeric_limits<double>::infinity();
  }
  return std::exp((shape - 1.0) * std::log(t) - t / scale -
                  shape * std::log(scale) - log_gamma(shape));
}

double pdf_lognormal(double t, double log_mean, double log_sd) {
  require(std::isfinite(log_mean) && positive_finite(log_sd),
          "pdf_lognormal: log_sd must be positive");
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double z = (lt - log_mean) / log_sd;
  return std::exp(-0.5 * z * z - lt - std::log(log_sd) - kLogSqrt2Pi);
}

double pdf_birnbaum_saunders(double t, double shape, double rate) {
  require(positive_finite(shape) && positive_finite(rate),
          "pdf_birnbaum_saunders: shape and rate must be positive");
  if (t <= 0.0) return 0.0;
  const double tl = t * rate;
  const double dev = tl - 1.0;
  return std::exp(std::log1p(tl) - std::log(2.0 * shape) -
                  0.5 * (std::log(2.0 * kPi * rate) + 3.0 * std::log(t)) -
                  dev * dev / (2.0 * tl * shape * shape));
}

double pdf_inverse_gaussian(double t, double mean, double shape) {
  require(positive_finite(mean) && positive_finite(shape),
          "pdf_inverse_gaussian: mean and shape must be positive");
  if (t <= 0.0) return 0.0;
  const double dev = t - mean;
  return std::exp(0.5 * (std::log(shape) - std::log(2.0 * kPi) -
                         3.0 * std::log(t)) -
                  shape * dev * dev / (2.0 * t * mean * mean));
}

double pdf_reciprocal_inverse_gaussian(double t, double mu, double lambda) {
  require(positive_finite(mu) && positive_finite(lambda),
          "pdf_reciprocal_inverse_gaussian: mu and lambda must be positive");
  if (t <= 0.0) return 0.0;
  const double dev = mu * t - 1.0;
  return std::exp(0.5 * (std::log(lambda) - std::log(2.0 * kPi) -
                         std::log(t)) -
                  lambda * dev * dev / (2.0 * t * mu * mu));
}

KernelSpec::KernelSpec(KernelFamily family_, Role role_, double sigma_)
    : family(family_), role(role_), sigma(sigma_) {
  if (!positive_finite(sigma)) {
    throw std::domain_error("KernelSpec: sigma must be positive and finite");
  }
}

double KernelSpec::domain_min() const noexcept {
  if (family == KernelFamily::reciprocal_inverse_gaussian &&
      role == Role::improper) {
    return sigma * sigma;
  }
  return 0.0;
}

bool KernelSpec::asymptotics_supported() const noexcept {
  if (family == KernelFamily::gaussian) return false;
  if (family == KernelFamily::inverse_gaussian && role == Role::proper) {
    return false;
  }
  return true;
}

double weight(const KernelSpec& spec, double y, double x) {
  const double s2 = spec.sigma * spec.sigma;
  // The anchor carries the parameters; the other argument is where the
  // density is read.
  const double anchor = spec.role == Role::improper ? x : y;
  const double at = spec.role == Role::improper ? y : x;
  require(std::isfinite(anchor) && anchor >= 0.0,
          "weight: anchoring argument must be nonnegative");
  switch (spec.family) {
    case KernelFamily::gamma:
      return pdf_gamma(at, 1.0 + anchor / s2, s2);
    case KernelFamily::lognormal:
      if (anchor == 0.0) return 0.0;
      return pdf_lognormal(at, std::log(anchor), spec.sigma);
    case KernelFamily::birnbaum_saunders:
      if (anchor == 0.0) return 0.0;
      return pdf_birnbaum_saunders(at, spec.sigma, 1.0 / anchor);
    case KernelFamily::inverse_gaussian:
      if (anchor == 0.0) return 0.0;
      return pdf_inverse_gaussian(at, anchor, 1.0 / s2);
    case KernelFamily::reciprocal_inverse_gaussian:
      require(anchor > s2,
              "weight: reciprocal inverse Gaussian needs anchor > sigma^2");
      return pdf_reciprocal_inverse_gaussian(at, 1.0 / (anchor - s2), 1.0 / s2);
    case KernelFamily::gaussian:
      break;
  }
  throw std::invalid_argument(
      "weight: gaussian baseline has no weight form; use the shifted or "
      "standard estimators");
}

double effective_bandwidth(const KernelSpec& spec, double u) {
  require(std::isfinite(u) && u >= 0.0,
          "effective_bandwidth: argument must be nonnegative");
  const double s = spec.sigma;
  const double s2 = s * s;
  switch (spec.family) {
    case KernelFamily::gamma:
      return s * std::sqrt(u + s2);
    case KernelFamily::lognormal:
      return u * std::exp(0.5 * s2) * std::sqrt(std::expm1(s2));
    case KernelFamily::birnbaum_saunders:
      return u * s * std::sqrt(1.0 + 1.25 * s2);
    case KernelFamily::inverse_gaussian:
      return s * u * std::sqrt(u);
    case KernelFamily::reciprocal_inverse_gaussian:
      return s * std::sqrt(u + s2);
    case KernelFamily::gaussian:
      return s;
  }
  throw std::logic_error("effective_bandwidth: unreachable");
}

double shift_term(const KernelSpec& spec, double u) {
  require(std::isfinite(u) && u >= 0.0,
          "shift_term: argument must be nonnegative");
  const double s2 = spec.sigma * spec.sigma;
  switch (spec.family) {
    case KernelFamily::gamma:
      return s2;
    case KernelFamily::lognormal:
      return u * std::expm1(0.5 * s2);
    case KernelFamily::birnbaum_saunders:
      return 0.5 * u * s2;
    case KernelFamily::inverse_gaussian:
    case KernelFamily::reciprocal_inverse_gaussian:
    case KernelFamily::gaussian:
      return 0.0;
  }
  throw std::logic_error("shift_term: unreachable");
}

KernelMoments kernel_moments(const std::function<double(double)>& kernel,
                             int max_order, double tol) {
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  auto moment = [&](int k) {
    return integrate_real(
               [&](double z) { return kernel(z) * std::pow(z, k); }, opt)
        .value;
  };
  const double mass = moment(0);
  if (std::abs(mass - 1.0) > tol) {
    throw std::invalid_argument("kernel_moments: kernel mass is not 1");
  }
  KernelMoments result;
  result.moments.push_back(mass);
  for (int k = 1; k <= max_order; ++k) {
    const double mk = moment(k);
    result.moments.push_back(mk);
    if (std::abs(mk - 1.0) <= tol) {
      result.order = k;
      const double kappa =
          integrate_real([&](double z) {
            const double v = kernel(z);
            return v * v;
          }, opt).value;
      if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kernel_moments: square integral invalid");
      }
      result.kappa = kappa;
      return result;
    }
    if (std::abs(mk) > tol) {
      throw std::invalid_argument(
          "kernel_moments: moment " + std::to_string(k) +
          " is neither 0 nor 1; not an admissible kernel");
    }
  }
  throw std::invalid_argument("kernel_moments: no order found up to limit");
}

}  // namespace akde
