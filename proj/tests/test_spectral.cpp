#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/spectral.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ckn;

TEST_CASE("mode data") {
  const auto p = Params::validate(5, 1, 1);
  auto m = mode_data(0, p);
  CHECK(m.lambda_k == 0.0);
  CHECK(m.l_k == 1);
  CHECK(m.varpi_k == 0.0);
  m = mode_data(1, p);
  CHECK(m.lambda_k == 4.0);
  CHECK(m.l_k == 5);
  m = mode_data(2, p);
  CHECK(m.lambda_k == 10.0);  // k(N-2+k) = 2*5
  CHECK(m.l_k == 14);
  CHECK(m.varpi_k == doctest::Approx(2.0 * 6.0));
  // closed formula (N+2k-2)(N+k-3)!/((N-2)! k!)
  for (int N = 5; N <= 9; ++N) {
    const auto q = Params::validate(N, 0, 0);
    for (int k = 1; k <= 8; ++k) {
      const double closed = (N + 2.0 * k - 2.0) * std::tgamma(N + k - 2.0) /
                            (std::tgamma(N - 1.0) * std::tgamma(k + 1.0));
      CHECK(double(mode_data(k, q).l_k) == doctest::Approx(closed));
    }
  }
}

TEST_CASE("Gamma_M and the potential weight") {
  CHECK(gamma_m(6.0) == 384.0);
  CHECK(gamma_m(5.0) == 105.0);
  const double M = 6.0, ps = 2 * M / (M - 4);
  CHECK((ps - 1) * gamma_m(M) == doctest::Approx(1920.0));
  CHECK(linearized_weight(M) == 1920.0);
}

TEST_CASE("kernels of the mode forms") {
  const double bfs = beta_fs(5, 1.0);
  const auto p = Params::validate(5, 1, bfs);
  const auto f1 = mode_quadratic_form(kernel_x1(p), 1, p);
  CHECK(std::abs(f1.value) < 1e-8 * f1.kinetic);
  CHECK(std::abs(f1.value) < 1e-8 * f1.potential);
  for (const auto& q : {Params::validate(5, 1, 1), Params::validate(6, 0.3, 0.1), p}) {
    const auto f0 = mode_quadratic_form(kernel_x0(q), 0, q);
    CHECK(std::abs(f0.value) < 1e-8 * f0.kinetic);
  }
  const auto p511 = Params::validate(5, 1, 1);
  const auto f = mode_quadratic_form(kernel_x1(p511), 1, p511);
  CHECK(f.value < 0.0);
  // independent value: Q_1(X_1) = -83/60 at (5,1,1)
  CHECK(f.value == doctest::Approx(-83.0 / 60.0).epsilon(1e-9));
}

TEST_CASE("mode form is homogeneous of degree two") {
  const auto p = Params::validate(5, 1, 1);
  const auto X = kernel_x1(p);
  const double q1 = mode_quadratic_form(X, 1, p).value;
  CHECK(rel_diff(mode_quadratic_form(X.scaled(3.0), 1, p).value, 9.0 * q1) < 1e-12);
}

TEST_CASE("Ritz values at and around the threshold") {
  const double bfs = beta_fs(5, 1.0);
  const auto at = ritz_min_eig(1, Params::validate(5, 1, bfs), 16);
  CHECK(std::abs(at.min_eigenvalue) <= 1e-4);
  CHECK(at.basis_size == 16);
  CHECK(at.coefficients.size() == 16);
  CHECK(at.gram_condition < 10.0);
  CHECK(ritz_min_eig(1, Params::validate(5, 1, 1), 16).min_eigenvalue < 0.0);
  CHECK(ritz_min_eig(2, Params::validate(5, 1, bfs), 16).min_eigenvalue > 0.0);
  CHECK(ritz_min_eig(1, Params::validate(5, 1, bfs - 0.05), 16).min_eigenvalue > 0.0);
  CHECK(ritz_min_eig(1, Params::validate(5, 1, bfs + 0.05), 16).min_eigenvalue < 0.0);
  CHECK_THROWS_AS(ritz_min_eig(1, Params::validate(5, 1, 1), 3), DomainError);
}

TEST_CASE("Ritz sign follows the threshold on a grid") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double bfs = beta_fs(5, alpha);
    const double bmax = 5 * alpha / 3.0;
    const double width = std::min(bfs - (alpha - 2.0), bmax - bfs);
    for (int i = -4; i <= 4; ++i) {
      if (i == 0) continue;
      const double beta = bfs + 0.2 * i * width;
      const double rho = ritz_min_eig(1, Params::validate(5, alpha, beta), 16).min_eigenvalue;
      CHECK((rho > 0) == (beta < bfs));
    }
  }
}

TEST_CASE("Ritz values decrease as the basis grows") {
  for (int k : {0, 1, 2, 3}) {
    const auto p = Params::validate(5, 1, 0.4);
    double prev = ritz_min_eig(k, p, 4).min_eigenvalue;
    for (int J = 8; J <= 20; J += 4) {
      const double rho = ritz_min_eig(k, p, J).min_eigenvalue;
      CHECK(rho <= prev + 1e-10 * std::max(1.0, std::abs(prev)));
      prev = rho;
    }
  }
}

TEST_CASE("higher modes are stable below the threshold") {
  for (int N = 5; N <= 8; ++N) {
    for (double alpha : {0.3, 1.0, 2.5}) {
      const double bfs = beta_fs(N, alpha);
      for (double t : {0.1, 0.5, 0.9, 1.0}) {
        const double beta = alpha - 2.0 + t * (bfs - alpha + 2.0);
        const auto p = Params::validate(N, alpha, beta);
        const auto d = derive(p);
        for (int k = 1; k <= 6; ++k) {
          const auto m = mode_data(k, p);
          const double gap = d.q * d.q * m.lambda_k - m.varpi_k;
          if (k == 1 && t == 1.0) {
            CHECK(std::abs(gap) < 1e-10);
          } else {
            CHECK(gap > 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("threshold located by bisection") {
  CHECK(std::abs(fs_locate(5, 1.0, 1e-4) - (std::sqrt(32.0) - 5.0)) <= 1e-4);
  CHECK(std::abs(fs_locate(5, 2.0, 1e-4) - (std::sqrt(41.0) - 5.0)) <= 1e-4);
  CHECK_THROWS_AS(fs_locate(5, -1.0, 1e-4), DomainError);
}
