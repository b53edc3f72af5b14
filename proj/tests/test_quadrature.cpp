#include <cmath>

#include "ckn/quadrature.hpp"
#include "ckn/specfun.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ckn;

TEST_CASE("semi-infinite reference integrals") {
  auto r = integrate_semiinfinite([](double s) { return s * s * s * std::pow(1 + s * s, -4); });
  CHECK(r.value == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(r.abs_error_estimate >= 0.0);
  CHECK(r.nodes > 0);
  r = integrate_semiinfinite([](double s) { return std::exp(-s); });
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  r = integrate_semiinfinite([](double s) {
    const double t = 1 - 3 * s * s;
    return s * s * t * t * std::pow(1 + s * s, -6);
  });
  CHECK(r.value == doctest::Approx(M_PI / 32.0).epsilon(1e-12));
}

TEST_CASE("power-law integrals against Beta values") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const double a = rng.uniform(-0.9, 6.0);
    const double b = rng.uniform((a + 1) / 2 + 0.3, (a + 1) / 2 + 8.0);
    const auto r = integrate_semiinfinite([&](double s) { return std::pow(s, a) * std::pow(1 + s * s, -b); });
    const double exact = 0.5 * beta_fn((a + 1) / 2, b - (a + 1) / 2);
    CHECK(rel_diff(r.value, exact) < 1e-10);
    CHECK(std::abs(r.value - exact) <= std::max(1e-10 * std::abs(r.value), r.abs_error_estimate) + 1e-15);
  }
}

TEST_CASE("bit-stable results") {
  auto f = [](double s) { return std::pow(s, 1.3) * std::pow(1 + s * s, -3.1); };
  CHECK(integrate_semiinfinite(f).value == integrate_semiinfinite(f).value);
}

TEST_CASE("failure modes") {
  CHECK_THROWS_AS(integrate_line([](double) { return std::nan(""); }), DomainError);
  // too slowly decaying: truncation at |x| = 745 is not negligible
  CHECK_THROWS_AS(integrate_line([](double x) { return std::exp(-1e-3 * std::abs(x)); }), AccuracyError);
  set_node_cap(64);
  CHECK_THROWS_AS(integrate_line([](double x) { return std::exp(-x * x); }), AccuracyError);
  set_node_cap(1 << 16);
}

TEST_CASE("vector integrand") {
  auto r = integrate_line_vec(
      [](double x, double* out) {
        out[0] = std::exp(-x * x);
        out[1] = 2.0 * std::exp(-x * x);
      },
      2);
  CHECK(r.values[0] == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(r.values[1] == doctest::Approx(2 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("norms reject divergent profiles") {
  const auto p = Params::validate(5, 1, 1);
  // decays like r^{-1}: norm_star needs p* delta > N + beta
  RadialProfile slow([](const Jet& x) { return exp(-softplus(x)); }, 0.0, 1.0);
  CHECK_THROWS_AS(norm_star(slow, p), DomainError);
  CHECK_THROWS_AS(norm_sq(slow, p), DomainError);
}

TEST_CASE("quotient is homogeneous and norms of zero") {
  const auto p = Params::validate(5, 0, 0);
  RadialProfile u([](const Jet& x) { return exp(-3.0 * softplus(2.0 * x)); }, 0.0, 6.0);
  const double q = quotient_radial(u, p);
  CHECK(rel_diff(quotient_radial(u.scaled(7.0), p), q) < 1e-12);
  RadialProfile zero([](const Jet& x) { return 0.0 * x; }, 0.0, kFastDecay);
  CHECK(norm_star(zero, p) == 0.0);
  CHECK_THROWS_AS(quotient_radial(zero, p), DomainError);
  // a constant is annihilated by the second-order operator away from any cutoff
  RadialProfile one([](const Jet& x) { return Jet::constant(1.0, x.order); }, 0.0, 0.0);
  CHECK(one.log_jet(0.7).derivative(1) == 0.0);
}
