#include <doctest.h>

#include <cmath>

#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/specfun.hpp"
#include "ckn/variation.hpp"
#include "support.hpp"

using namespace ckn;

TEST_CASE("second variation at (5,1,1)") {
  const Params p = Params::validate(5, 1, 1);
  const SecondVariation sv = second_variation(p);
  CHECK(sv.mu == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sv.factor == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sv.I1 == doctest::Approx(M_PI / 32).epsilon(1e-13));
  CHECK(sv.I2 == doctest::Approx(1.0 / 12).epsilon(1e-13));
  CHECK(sv.prefactor == doctest::Approx(5.2637890139143246).epsilon(1e-12));
  // Frozen from an independent high-precision evaluation.
  CHECK(sv.value == doctest::Approx(-5.8586824854314582).epsilon(1e-12));
  CHECK(sv.direct_value == doctest::Approx(-7.2815748025814824).epsilon(1e-9));
}

TEST_CASE("second variation: quadrature matches Beta reduction") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int N = static_cast<int>(rng.integer(5, 9));
    const double alpha = rng.uniform(-0.5 * (N - 2), 3.0);
    const double bmax = N * alpha / (N - 2);
    const double beta = rng.uniform(alpha - 2 + 0.05 * (bmax - alpha + 2), bmax);
    const SecondVariation sv = second_variation(Params::validate(N, alpha, beta));
    CHECK(rel_diff(sv.I1, sv.I1_quadrature) < 1e-9);
    CHECK(rel_diff(sv.I2, sv.I2_quadrature) < 1e-9);
    CHECK(sv.I1 > 0);
    CHECK(sv.I2 > 0);
    CHECK(sv.prefactor > 0);
    const double assembled = sv.prefactor * sv.factor * (2 * sv.I1 + (2 * derive(Params::validate(N, alpha, beta)).M - 5 + sv.mu) * sv.I2);
    CHECK(rel_diff(sv.value, assembled) < 1e-10);
  }
}

TEST_CASE("second variation sign law on a grid straddling the curve") {
  for (int N : {5, 6}) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      const double bfs = beta_fs(N, alpha);
      for (double off : {-0.2, -0.05, 0.05, 0.2}) {
        const double beta = bfs + off;
        if (!param_violations(N, alpha, beta).empty()) continue;
        const Params p = Params::validate(N, alpha, beta);
        const Derived dv = derive(p);
        const double law = dv.q * dv.q * (N - 1) - (dv.M - 1);
        const SecondVariation sv = second_variation(p);
        CHECK((sv.value < 0) == (law < 0));
        CHECK((sv.direct_value < 0) == (law < 0));
        CHECK((off > 0) == (law < 0));
      }
    }
  }
}

TEST_CASE("second variation vanishes on the threshold curve") {
  const Params p = Params::validate(5, 1, beta_fs(5, 1));
  const SecondVariation sv = second_variation(p);
  CHECK(std::abs(sv.factor) < 1e-12);
  CHECK(std::abs(sv.value) < 1e-10);
  CHECK(std::abs(sv.direct_value) < 1e-8);
}

TEST_CASE("directional quotient") {
  const Params p = Params::validate(5, 1, 1);
  const double sr = s_r_closed(p);
  CHECK(rel_diff(directional_quotient(p, 0.0), sr) < 1e-8);

  const double eps = 0.01;
  const double ip = directional_quotient(p, eps);
  const double im = directional_quotient(p, -eps);
  CHECK(rel_diff(ip, im) < 1e-10);
  CHECK(ip < sr);

  const double ustar = norm_star(extremal(p), p);
  const SecondVariation sv = second_variation(p);
  const double window = eps * eps * std::abs(sv.value) / (ustar * ustar);
  CHECK(sr - ip >= 0.2 * window);
  CHECK(sr - ip <= 5.0 * window);
}

TEST_CASE("central-difference curvature matches the second variation") {
  const Params p = Params::validate(5, 1, 1);
  const double eps = 1e-2;
  const double i0 = directional_quotient(p, 0.0, 1e-13);
  const double ip = directional_quotient(p, eps, 1e-13);
  const double im = directional_quotient(p, -eps, 1e-13);
  const double curvature = (ip - 2 * i0 + im) / (eps * eps);
  const SecondVariation sv = second_variation(p);
  const double ustar = norm_star(extremal(p), p);
  CHECK(curvature < 0);
  CHECK(sv.value < 0);
  // I'' along Z is 2 <J''(U) Z, Z> / |U|_*^2.
  const double predicted = 2.0 * sv.direct_value / (ustar * ustar);
  CHECK(rel_diff(curvature, predicted) < 0.2);
  // O(eps^2) truncation only
  CHECK(rel_diff(curvature, predicted) < 1e-4);
}

TEST_CASE("certify") {
  SUBCASE("breaking") {
    const auto c = certify(Params::validate(5, 1, 1), 0.01);
    CHECK(c.verdict == Verdict::Breaking);
    CHECK(c.consistent());
    CHECK(c.second_variation < 0);
    CHECK(c.directional_quotient < c.s_r);
    CHECK(c.ritz_rho1 < 0);
    CHECK(c.discrepancy.empty());
  }
  SUBCASE("not breaking") {
    const auto c = certify(Params::validate(5, 1, 0.3), 0.01);
    CHECK(c.verdict == Verdict::NotBreaking);
    CHECK(c.consistent());
    CHECK(c.second_variation > 0);
  }
  SUBCASE("boundary") {
    const auto c = certify(Params::validate(5, 1, beta_fs(5, 1)), 0.01);
    CHECK(c.verdict == Verdict::Boundary);
    CHECK(c.consistent());
  }
  SUBCASE("classical point is a boundary") {
    const auto c = certify(Params::validate(6, 0, 0), 0.01);
    CHECK(c.verdict == Verdict::Boundary);
    CHECK(c.consistent());
  }
  SUBCASE("negative alpha") {
    const auto c = certify(Params::validate(6, -1, -2.0), 0.01);
    CHECK(c.verdict == Verdict::NotBreaking);
    CHECK(c.consistent());
  }
  SUBCASE("huge tolerance flattens every witness") {
    const auto c = certify(Params::validate(5, 1, 1), 0.01, 1e30);
    CHECK(c.verdict == Verdict::Boundary);
    CHECK_FALSE(c.consistent());
    CHECK_FALSE(c.discrepancy.empty());
  }
}
