#pragma once

namespace akde {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms), relative
// accuracy better than 1e-13 across [1e-3, 1e6]. Throws std::domain_error
// for x <= 0 or NaN.
double log_gamma(double x);

// Standard normal density.
double normal_pdf(double z);

// Standard normal distribution function, via erfc for tail accuracy.
double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1), rational minimax approximation accurate to
// full double precision. Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

}  // namespace akde
