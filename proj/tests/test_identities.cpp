#include <doctest.h>

#include <cmath>

#include "ckn/identities.hpp"
#include "ckn/profiles.hpp"
#include "support.hpp"

using namespace ckn;

namespace {

const std::vector<std::tuple<int, double, double>> kPoints = {
    {5, 1.0, 1.0}, {5, 0.5, 0.2}, {6, -1.0, -1.6}, {7, 2.0, 1.5}, {8, -0.5, -1.0}};

RadialProfile radial(int which) { return test_battery()[which].radial_part; }

RadialProfile zero_profile() {
  auto f = [](const auto& x) { return 0 * x; };
  return RadialProfile::generic(f, 0.0, kFastDecay);
}

}  // namespace

TEST_CASE("battery layout") {
  const auto b = test_battery();
  REQUIRE(b.size() == 10);
  for (int i = 0; i < 5; ++i) {
    CHECK(b[i].mode_k == 0);
    CHECK(b[i + 5].mode_k == 1);
    CHECK(b[i].radial_part.exponents_consistent());
    CHECK(b[i + 5].radial_part.exponents_consistent());
    const double r = 1.7;
    CHECK(rel_diff(b[i + 5].radial_part.eval(r), r * b[i].radial_part.eval(r)) < 1e-14);
  }
  CHECK(rel_diff(b[2].radial_part.eval(0.8), std::exp(-0.64)) < 1e-14);
}

TEST_CASE("Laplacian bound over the battery") {
  for (auto [N, a, b] : kPoints) {
    const Params p = Params::validate(N, a, b);
    for (const auto& u : test_battery()) {
      const auto r = check_laplacian_bound(u, p);
      INFO(N, " ", a, " ", b, " ", u.name, " ratio ", r.ratio, " bound ", r.bound);
      CHECK(r.pass);
    }
  }
  const auto r = check_laplacian_bound(test_battery()[1], Params::validate(5, 1, 1));
  CHECK(r.bound == doctest::Approx(4.0));
  CHECK(r.ratio <= 4.0);
  for (const auto& u : test_battery()) {
    CHECK(check_laplacian_bound(u, Params::validate(6, 0, -0.5)).ratio == 1.0);
  }
}

TEST_CASE("integration-by-parts identities over the battery") {
  for (auto [N, a, b] : kPoints) {
    const Params p = Params::validate(N, a, b);
    for (const auto& u : test_battery()) {
      INFO(N, " ", a, " ", b, " ", u.name);
      if (u.mode_k == 0) CHECK(check_energy_identity(u.radial_part, p) < 1e-8);
      CHECK(check_expansion(u, p) < 1e-8);
    }
  }
  for (const auto& u : test_battery()) {
    for (int N : {5, 6, 8}) {
      INFO(N, " ", u.name);
      CHECK(check_pohozaev_identity(u, N) < 1e-8);
    }
  }
  CHECK(check_energy_identity(radial(2), Params::validate(5, 1, 0.5)) < 1e-8);
  CHECK(check_expansion(test_battery()[3], Params::validate(5, 0, -0.5)) < 1e-12);
  CHECK(check_energy_identity(zero_profile(), Params::validate(5, 1, 1)) == 0.0);
  CHECK(check_pohozaev_identity({zero_profile(), 0, "zero"}, 5) == 0.0);
}

TEST_CASE("identities reject divergent integrals") {
  // (1+r^2)^-2 at weight exponent 9.5 diverges at infinity.
  CHECK_THROWS_AS(check_expansion(test_battery()[0], Params::validate(10, 3, 2.5)), DomainError);
  CHECK_THROWS_AS(check_rellich_sobolev(radial(0), 5, 2.0), DomainError);
  CHECK_THROWS_AS(rellich_sobolev_constants(5, 0.5), DomainError);
  CHECK_THROWS_AS(rellich_sobolev_constants(5, -3.5), DomainError);
}

TEST_CASE("mu constants") {
  const RellichSobolevConstants c = rellich_sobolev_constants(5, -1);
  CHECK(c.mu == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(c.c_mu1 == doctest::Approx(65.0 / 18).epsilon(1e-14));
  CHECK(c.c_mu2 == doctest::Approx(625.0 / 1296 - 5.0 / 6).epsilon(1e-14));
  CHECK(c.eta == doctest::Approx(1.0 / 6).epsilon(1e-15));
  const RellichSobolevConstants z = rellich_sobolev_constants(6, -1e-9);
  CHECK(std::abs(z.c_mu1) < 1e-8);
  CHECK(std::abs(z.c_mu2) < 1e-8);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const int N = static_cast<int>(rng.integer(5, 12));
    const auto m = rellich_sobolev_constants(N, rng.uniform(2.0 - N, 0.0) * 0.999);
    CHECK(m.mu > 0);
    CHECK(m.mu < N - 4);
    CHECK(m.c_mu1 > 0);
  }
}

TEST_CASE("weighted norm equality under u = |x|^eta v") {
  auto inv = [](const auto& x) { return exp(-softplus(2 * x)); };
  const RadialProfile v = RadialProfile::generic(inv, 0.0, 2.0);
  CHECK(check_power_substitution(v, 5, -1) < 1e-10);
  // v(lambda r)
  auto scaled = [](const auto& x) { return exp(-softplus(2 * (x + 0.7))); };
  CHECK(check_power_substitution(RadialProfile::generic(scaled, 0.0, 2.0), 5, -1) < 1e-10);
  CHECK(check_power_substitution(v, 6, -1e-12) < 1e-10);
  for (int i : {0, 1, 2, 4}) CHECK(check_power_substitution(radial(i), 7, -2.5) < 1e-10);
}

TEST_CASE("Rellich-Sobolev inequality") {
  SUBCASE("equality on the extremal family") {
    // Frozen from an independent high-precision evaluation.
    const auto r1 = check_rellich_sobolev(rellich_sobolev_extremal(5, 1.0 / 3), 5, 1.0 / 3);
    CHECK(rel_diff(r1.lhs, 30.144991216958159) < 1e-9);
    CHECK(rel_diff(r1.rhs, 30.144991216958159) < 1e-9);
    CHECK(r1.pass);
    const auto r3 = check_rellich_sobolev(rellich_sobolev_extremal(5, 1.0 / 3, 1.0, 3.0), 5, 1.0 / 3);
    CHECK(rel_diff(r3.lhs, 17.404218793829697) < 1e-9);
    CHECK(rel_diff(r3.lhs, r3.rhs) < 1e-6);
    const auto ra = check_rellich_sobolev(rellich_sobolev_extremal(7, 2.2, -2.5, 0.4), 7, 2.2);
    CHECK(rel_diff(ra.lhs, ra.rhs) < 1e-6);
  }
  SUBCASE("strict inequality off the family") {
    const auto r = check_rellich_sobolev(radial(0), 5, 1.0 / 3);
    CHECK(rel_diff(r.lhs, 25.609286519962139) < 1e-9);
    CHECK(rel_diff(r.rhs, 11.609759640363753) < 1e-9);
    CHECK(r.lhs > r.rhs);
  }
  SUBCASE("random admissible profiles") {
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
      const int N = static_cast<int>(rng.integer(5, 8));
      const double mu = rng.uniform(0.05, 0.95) * (N - 4);
      const double s = rng.uniform(1.0, 3.0);
      const double e = rng.uniform(1.0, 4.0);
      const double c = rng.uniform(-1.0, 1.0);
      // (1 + r^s)^{-e} with enough decay for both integrals.
      const double expo = std::max(e, (N - 4.0) / 2 / s + 0.5);
      auto f = [=](const auto& x) { return exp(-expo * softplus(s * x + c)); };
      const auto r = check_rellich_sobolev(RadialProfile::generic(f, 0.0, expo * s), N, mu);
      INFO(N, " ", mu, " ", s, " ", expo);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("equality on the upper boundary line") {
  const std::vector<std::tuple<int, double, double>> oracle = {
      {5, -1.0, 27.972867094209949}, {6, -0.5, 158.4492956257894}, {8, -2.0, 158.17648643921473}};
  for (auto [N, a, c] : oracle) {
    const auto r = check_upper_line_equality(N, a);
    CHECK(rel_diff(r.constant, c) < 1e-12);
    CHECK(r.defect < 1e-6);
  }
  for (int N : {5, 6, 8}) {
    for (double a : {-0.5, -1.0, -2.0}) {
      if (a <= 2.0 - N) continue;
      const auto r = check_upper_line_equality(N, a);
      CHECK(rel_diff(r.constant, s_r_closed(Params::validate(N, a, N * a / (N - 2.0)))) < 1e-10);
    }
  }
  CHECK(rel_diff(check_upper_line_equality(7, -1e-9).constant, s_0_closed(7)) < 1e-8);
}
