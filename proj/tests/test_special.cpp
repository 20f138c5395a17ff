#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akde/special.hpp"
#include "reference_values.hpp"

using namespace akde;

TEST_CASE("log_gamma matches frozen references across nine decades") {
  for (const auto& [x, expected] : ref::kLgamma) {
    const double got = log_gamma(x);
    if (expected == 0.0) {
      CHECK(std::abs(got) < 1e-14);
    } else {
      CHECK(std::abs(got - expected) <= 1e-13 * std::abs(expected));
    }
  }
}

TEST_CASE("log_gamma obeys the recurrence and reflection identities") {
  for (double x : {0.07, 0.31, 1.9, 4.5, 23.0, 611.0}) {
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.2), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("normal quantile matches frozen references") {
  for (const auto& [p, expected] : ref::kNormalQuantile) {
    const double got = normal_quantile(p);
    if (expected == 0.0) {
      CHECK(std::abs(got) < 1e-15);
    } else {
      CHECK(std::abs(got - expected) <= 5e-14 * std::abs(expected));
    }
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(-0.1), std::domain_error);
}

TEST_CASE("normal quantile inverts normal_cdf") {
  // Upper limit 5.6, not 7: past that the tail mass 1 - p falls below ~1e-8,
  // so p itself quantizes too coarsely near 1.0 to recover z at this
  // tolerance.  The lower tail keeps full relative precision, hence -7.
  for (double z = -7.0; z <= 5.6; z += 0.37) {
    const double p = normal_cdf(z);
    CHECK(normal_quantile(p) == doctest::Approx(z).epsilon(1e-9));
  }
}

TEST_CASE("normal pdf pins") {
  CHECK(std::abs(normal_pdf(0.0) - ref::kNormalPdf0) < 1e-16);
  CHECK(std::abs(normal_pdf(1.0) - ref::kNormalPdf1) < 1e-16);
  CHECK(normal_pdf(-1.0) == normal_pdf(1.0));
}
