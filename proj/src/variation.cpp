#include "ckn/variation.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "ckn/errors.hpp"
#include "ckn/profiles.hpp"
#include "ckn/specfun.hpp"
#include "ckn/spectral.hpp"

namespace ckn {

namespace {

// 64-point Gauss-Legendre rule mapped to (0, pi), weights multiplied by
// sin^{n}(theta); nodes returned as cos(theta).
struct AngularRule {
  std::array<double, 64> cos_theta;
  std::array<double, 64> weight;
};

AngularRule angular_rule(int n) {
  using Rule = boost::math::quadrature::gauss<double, 64>;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  AngularRule out{};
  std::size_t j = 0;
  auto push = [&](double xi, double wi) {
    const double th = 0.5 * M_PI * (1.0 + xi);
    out.cos_theta[j] = std::cos(th);
    out.weight[j] = 0.5 * M_PI * wi * std::pow(std::sin(th), n);
    ++j;
  };
  // Boost stores the non-negative half of the symmetric rule.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    push(xs[i], ws[i]);
    if (xs[i] != 0.0) push(-xs[i], ws[i]);
  }
  return out;
}

int sign_with_tol(double w, double tol) {
  if (w < -tol) return -1;
  if (w > tol) return 1;
  return 0;
}

}  // namespace

SecondVariation second_variation(const Params& p) {
  const Derived dv = derive(p);
  const double M = dv.M;
  const double d = p.width();
  SecondVariation sv{};
  sv.mu = dv.q * dv.q * (p.N() - 1);
  sv.factor = sv.mu - (M - 1.0);
  sv.prefactor = dv.omega / p.N() * std::pow(d / 2.0, 3);
  // B((M-3)/2, (M+3)/2) = (M+1)/(M-3) B((M-1)/2, (M+1)/2) folds the three
  // Beta terms of I1 into one; the assembly runs in logs because both Beta
  // values underflow once M is in the thousands.
  const double c1 = 0.5 * (M + 1) / (M - 3) + 0.5 * (M - 3) * (M - 5);
  const double l1 = log_beta((M - 1) / 2, (M + 1) / 2) + std::log(c1);
  const double l2 = log_beta((M - 2) / 2, (M - 2) / 2) - std::log(2.0);
  sv.I1 = std::exp(l1);
  sv.I2 = std::exp(l2);
  const double bracket = l2 + std::log(2.0 * std::exp(l1 - l2) + (2.0 * M - 5.0) + sv.mu);
  const double mag = std::exp(std::log(sv.prefactor) + std::log(std::abs(sv.factor)) + bracket);
  sv.value = sv.factor < 0 ? -mag : sv.factor > 0 ? mag : 0.0;

  // Same integrals in y = ln s: I1 = int e^{(M-5)y} (theta X)^2, I2 = int e^{(M-4)y} X^2.
  const RadialProfile X = kernel_x1(p);
  const auto q = integrate_line_vec(
      [&](double y, double* out) {
        const Jet j = X.log_jet(Jet::variable(y, 1));
        out[0] = weighted_square(M - 5.0, y, j.derivative(1));
        out[1] = weighted_square(M - 4.0, y, j.value());
      },
      2, 1e-12);
  sv.I1_quadrature = q.values[0];
  sv.I2_quadrature = q.values[1];
  sv.direct_value = sv.prefactor * mode_quadratic_form(X, 1, p, 1e-12).value;
  return sv;
}

namespace {

// I(U + eps c Z_i), with the numerator split by mode orthogonality.
double quotient_along(const Params& p, double eps, double c, double tol) {
  const Derived dv = derive(p);
  const RadialProfile U = extremal(p);
  const RadialProfile Z = kernel_mode(p, KernelKind::Z1Radial);
  const double t = eps * c;
  const double num = norm_sq_mode(U, p, 0, dv.omega, tol) +
                     t * t * norm_sq_mode(Z, p, 1, dv.omega / p.N(), tol);

  // |U + t Z1 cos(theta)|^{p*} = U^{p*} |1 + t (Z1/U) cos(theta)|^{p*}.
  const AngularRule rule = angular_rule(p.N() - 2);
  const double a = p.N() + p.beta();
  const double ps = dv.p_star;
  const auto den = integrate_line(
      [&](double x) {
        const double u = U.log_jet(Jet::constant(x, 0)).value();
        if (u == 0.0) return 0.0;
        const double ratio = t * Z.log_jet(Jet::constant(x, 0)).value() / u;
        double inner = 0.0;
        for (std::size_t i = 0; i < rule.weight.size(); ++i) {
          inner += rule.weight[i] * std::pow(std::abs(1.0 + ratio * rule.cos_theta[i]), ps);
        }
        return std::exp(a * x + ps * std::log(u)) * inner;
      },
      tol);
  const double star = std::pow(sphere_area(p.N() - 1) * den.value, 1.0 / ps);
  return num / (star * star);
}

}  // namespace

double directional_quotient(const Params& p, double eps, double tol) {
  if (!(std::abs(eps) < 0.5)) throw DomainError("directional_quotient: |eps| must be < 0.5");
  return quotient_along(p, eps, 1.0, tol);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Breaking: return "Breaking";
    case Verdict::NotBreaking: return "NotBreaking";
    case Verdict::Boundary: return "Boundary";
    case Verdict::Inconsistent: return "Inconsistent";
  }
  return "Inconsistent";
}

Verdict expected_verdict(const Params& p) {
  const RegionClass c = classify(p.N(), p.alpha(), p.beta());
  if (c == RegionClass::SymmetryBreaking || c == RegionClass::NotAttainedBoundary) {
    return Verdict::Breaking;
  }
  if (std::abs(p.beta() - beta_fs(p.N(), p.alpha())) <= kBoundaryTol) return Verdict::Boundary;
  return Verdict::NotBreaking;
}

BreakingCertificate certify(const Params& p, double eps, double tol) {
  const Derived dv = derive(p);
  BreakingCertificate c{};
  c.N = p.N();
  c.alpha = p.alpha();
  c.beta = p.beta();
  c.eps = eps;
  c.s_r = s_r_closed(p);

  const SecondVariation sv = second_variation(p);
  c.second_variation = sv.value;
  c.variation_witness = sv.factor / (dv.M - 1.0);

  // Z1/U peaks at 1/(2C), C the amplitude constant; perturbing along 2C Z
  // makes eps a pointwise relative size, so the quotient moves by O(eps^2)
  // relative whatever the scale of Z. The differences are still small, so
  // integrate tightly and subtract the quadrature value of I(U).
  constexpr double kTightTol = 1e-13;
  const double zc = 2.0 * amplitude_constant(p);
  c.directional_quotient = directional_quotient(p, eps, kTightTol);
  const double i0 = quotient_along(p, 0.0, zc, kTightTol);
  const double i1 = quotient_along(p, eps, zc, kTightTol);
  const double i2 = quotient_along(p, 2.0 * eps, zc, kTightTol);
  const double g1 = (i1 - i0) / (eps * eps);
  const double g2 = (i2 - i0) / (4.0 * eps * eps);
  // Relative to the eps^2 growth of the numerator alone, ||2C Z||^2 / ||U||_*^2.
  const double ustar = norm_star(extremal(p), p, kTightTol);
  const double zz = zc * zc * norm_sq_mode(kernel_mode(p, KernelKind::Z1Radial), p, 1,
                                           dv.omega / p.N(), kTightTol);
  c.quotient_witness = (4.0 * g1 - g2) / 3.0 * ustar * ustar / zz;

  c.ritz_rho1 = ritz_min_eig(1, p).min_eigenvalue;
  c.spectral_witness = c.ritz_rho1 / linearized_weight(dv.M);

  const int s1 = sign_with_tol(c.variation_witness, tol);
  const int s2 = sign_with_tol(c.quotient_witness, tol);
  const int s3 = sign_with_tol(c.spectral_witness, tol);
  c.witnesses_agree = s1 == s2 && s2 == s3;
  if (!c.witnesses_agree) {
    c.verdict = Verdict::Inconsistent;
  } else {
    c.verdict = s1 < 0 ? Verdict::Breaking : s1 > 0 ? Verdict::NotBreaking : Verdict::Boundary;
  }
  c.expected = expected_verdict(p);

  std::ostringstream msg;
  if (!c.witnesses_agree) {
    msg << "witness signs disagree (second variation " << s1 << ", quotient " << s2
        << ", spectral " << s3 << ")";
  } else if (c.verdict != c.expected) {
    msg << "verdict " << to_string(c.verdict) << " but region implies " << to_string(c.expected);
  }
  c.discrepancy = msg.str();
  return c;
}

}  // namespace ckn
