#include "ckn/radial_profile.hpp"

#include <cmath>
#include <stdexcept>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

bool exponent_matches(double observed, double declared) {
  if (std::isinf(declared)) return std::isnan(observed) || observed > 50.0;
  return std::abs(observed - declared) <= 0.05 * std::max(1.0, std::abs(declared));
}

}  // namespace

RadialProfile::RadialProfile(JetFn f, double origin_exponent, double decay_exponent,
                             int max_order)
    : RadialProfile(std::move(f), nullptr, origin_exponent, decay_exponent, max_order) {}

RadialProfile::RadialProfile(JetFn f, QJetFn qf, double origin_exponent, double decay_exponent,
                             int max_order)
    : f_(std::move(f)),
      qf_(std::move(qf)),
      a0_(origin_exponent),
      delta_(decay_exponent),
      order_(max_order) {
  if (max_order < 0 || max_order > Jet::kMaxOrder) {
    throw DomainError("RadialProfile: max_order must lie in [0, 4]");
  }
}

RadialProfile RadialProfile::with_measured_exponents(JetFn f, int max_order, QJetFn qf) {
  RadialProfile tmp(f, 0.0, 0.0, max_order);
  const double lo = tmp.log_slope(std::exp(-30.0));
  const double hi = tmp.log_slope(std::exp(30.0));
  const double a0 = std::isfinite(lo) ? lo : 0.0;
  const double delta = (std::isfinite(hi) && hi > -50.0) ? -hi : kFastDecay;
  return RadialProfile(std::move(f), std::move(qf), a0, delta, max_order);
}

Jet RadialProfile::log_jet(double x) const { return f_(Jet::variable(x)); }

double RadialProfile::eval(double r) const {
  if (!(r > 0.0)) throw DomainError("RadialProfile::eval: r must be positive");
  return log_jet(std::log(r)).value();
}

double RadialProfile::theta_deriv(double r, int k) const {
  if (!(r > 0.0)) throw DomainError("RadialProfile: r must be positive");
  if (k < 0 || k > order_) throw DomainError("RadialProfile: derivative order exceeds max_order");
  return log_jet(std::log(r)).derivative(k);
}

double RadialProfile::deriv(double r, int k) const {
  if (!(r > 0.0)) throw DomainError("RadialProfile::deriv: r must be positive");
  if (k < 1 || k > order_) throw DomainError("RadialProfile::deriv: order must lie in [1, max_order]");
  const Jet j = log_jet(std::log(r));
  double t[Jet::kMaxOrder + 1];
  for (int m = 0; m <= k; ++m) t[m] = j.derivative(m);
  // r^k u^(k) in terms of theta^m u, signed Stirling numbers of the first kind.
  double rk = 0.0;
  switch (k) {
    case 1: rk = t[1]; break;
    case 2: rk = t[2] - t[1]; break;
    case 3: rk = t[3] - 3 * t[2] + 2 * t[1]; break;
    case 4: rk = t[4] - 6 * t[3] + 11 * t[2] - 6 * t[1]; break;
  }
  return rk / std::pow(r, k);
}

double RadialProfile::log_slope(double r) const {
  const Jet j = log_jet(std::log(r));
  return j.c[1] / j.c[0];
}

RadialProfile RadialProfile::scaled(double c) const {
  JetFn f = f_;
  QJetFn qf = qf_;
  QJetFn qs = qf ? QJetFn([qf, c](const QJet& x) { return qf(x) * c; }) : nullptr;
  return RadialProfile([f, c](const Jet& x) { return c * f(x); }, qs, a0_, delta_, order_);
}

bool RadialProfile::exponents_consistent() const {
  return exponent_matches(log_slope(1e-3), a0_) && exponent_matches(-log_slope(1e3), delta_);
}

}  // namespace ckn
