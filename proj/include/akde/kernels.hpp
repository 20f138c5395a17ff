#pragma once

#include <functional>
#include <string>
#include <vector>

namespace akde {

enum class KernelFamily {
  gamma,
  lognormal,
  birnbaum_saunders,
  inverse_gaussian,
  reciprocal_inverse_gaussian,
  gaussian,  // symmetric baseline; estimator support only, no weight form
};

enum class Role { improper, proper };

const char* family_name(KernelFamily family);
const char* role_name(Role role);
KernelFamily parse_family(const std::string& name);
Role parse_role(const std::string& name);

// Density functions, evaluated in log space so extreme shapes stay finite.
// t < 0 returns 0; t == 0 returns the boundary limit. Invalid parameters
// raise std::domain_error.
double pdf_gamma(double t, double shape, double scale);
double pdf_lognormal(double t, double log_mean, double log_sd);
double pdf_birnbaum_saunders(double t, double shape, double rate);
double pdf_inverse_gaussian(double t, double mean, double shape);
double pdf_reciprocal_inverse_gaussian(double t, double mu, double lambda);

// A kernel choice: family, role, smoothing parameter sigma > 0.
struct KernelSpec {
  KernelSpec(KernelFamily family, Role role, double sigma);

  KernelFamily family;
  Role role;
  double sigma;

  // Least evaluation point with a defined weight: sigma^2 for the improper
  // reciprocal inverse Gaussian, otherwise 0.
  double domain_min() const noexcept;

  // False where no closed-form bias/variance/MISE column exists.
  bool asymptotics_supported() const noexcept;
};

// Smoothing weight W(y, x): the improper role reads a density in y with
// parameters anchored at the evaluation point x; the proper role swaps the
// two arguments. Gaussian has no weight form and raises
// std::invalid_argument.
double weight(const KernelSpec& spec, double y, double x);

// Gaussian-limit spread h(u) and shift h^2(u) delta(u) of the weight's
// parametrization, as functions of the anchoring argument u >= 0.
double effective_bandwidth(const KernelSpec& spec, double u);
double shift_term(const KernelSpec& spec, double u);

struct KernelMoments {
  int order;                    // first k >= 1 with m_k = 1 after zeros
  double kappa;                 // integral of K^2
  std::vector<double> moments;  // m_0 .. m_order
};

// Classifies a symmetric real-line kernel by quadrature: checks unit mass,
// finds the order, and integrates the square. Throws std::invalid_argument
// if no order <= max_order fits within tol.
KernelMoments kernel_moments(const std::function<double(double)>& kernel,
                             int max_order = 6, double tol = 1e-6);

}  // namespace akde
