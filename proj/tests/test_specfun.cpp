#include <cmath>
#include <numbers>

#include "ckn/errors.hpp"
#include "ckn/specfun.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ckn;

TEST_CASE("log_gamma reference values") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(log_gamma(2.5) == doctest::Approx(std::log(1.5 * 0.5 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
  CHECK(log_gamma(1.0) == doctest::Approx(0.0));
  // ln Gamma(300) from mpmath
  CHECK(log_gamma(300.0) == doctest::Approx(1409.2020674704118).epsilon(1e-14));
}

TEST_CASE("log_gamma rejects non-positive and non-finite input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(log_gamma(INFINITY), DomainError);
  CHECK_THROWS_AS(beta_fn(1.0, 0.0), DomainError);
}

TEST_CASE("beta_fn reference values") {
  CHECK(beta_fn(2.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(beta_fn(1.5, 4.5) == doctest::Approx(0.08590292412159591).epsilon(1e-13));
  CHECK(beta_fn(1.5, 4.5) == beta_fn(4.5, 1.5));
}

TEST_CASE("Gamma recurrence on random arguments") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(0.5, 150.0);
    CHECK(rel_diff(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-12);
  }
}

TEST_CASE("Beta symmetry and B(a,1) = 1/a") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.1, 60.0);
    const double b = rng.uniform(0.1, 60.0);
    CHECK(beta_fn(a, b) == beta_fn(b, a));
    CHECK(rel_diff(beta_fn(a, 1.0), 1.0 / a) < 1e-12);
  }
}
