#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "akde/errors.hpp"

namespace akde {

struct QuadratureResult {
  double value;
  double error;        // accumulated local error estimate
  std::size_t evaluations;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_intervals = 4096;
};

namespace quad_detail {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NonConvergence("integrand not finite at x = " + std::to_string(x));
    }
    return v;
  };
  const double fc = eval(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fsum = eval(c - dx) + eval(c + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) {
      resg += kWg[(j - 1) / 2] * fsum;
    }
  }
  return Panel{a, b, resk * h, std::abs(resk - resg) * std::abs(h)};
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration over a finite interval. Bisects the
// panel with the largest local error until the error sum meets the tolerance.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureOptions& opt = {}) {
  if (!(a < b)) {
    throw std::invalid_argument("integrate: need a < b");
  }
  std::priority_queue<quad_detail::Panel> panels;
  panels.push(quad_detail::gk15(f, a, b));
  std::size_t evals = 15;
  double total = panels.top().value;
  double err = panels.top().error;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (panels.size() >= opt.max_intervals) {
      const auto& worst = panels.top();
      throw NonConvergence(
          "integrate: interval budget exhausted; worst panel [" +
          std::to_string(worst.a) + ", " + std::to_string(worst.b) +
          "] error " + std::to_string(worst.error));
    }
    const quad_detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = quad_detail::gk15(f, worst.a, mid);
    const auto right = quad_detail::gk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  return {total, err, evals};
}

// Integral over (lo, infinity) through x = lo + t/(1-t); the rule never
// touches the endpoints, so integrable endpoint singularities are tolerated.
template <class F>
QuadratureResult integrate_positive(F&& f, double lo = 0.0,
                                    const QuadratureOptions& opt = {}) {
  auto g = [&](double t) {
    const double u = 1.0 - t;
    return f(lo + t / u) / (u * u);
  };
  return integrate(g, 0.0, 1.0, opt);
}

// Integral over the whole real line, folded onto (0, 1).
template <class F>
QuadratureResult integrate_real(F&& f, const QuadratureOptions& opt = {}) {
  auto g = [&](double t) {
    const double u = 1.0 - t;
    const double x = t / u;
    return (f(x) + f(-x)) / (u * u);
  };
  return integrate(g, 0.0, 1.0, opt);
}

}  // namespace akde
