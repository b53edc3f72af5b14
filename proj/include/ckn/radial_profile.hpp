#pragma once

#include <functional>
#include <limits>

#include "ckn/jet.hpp"

namespace ckn {

using JetFn = std::function<Jet(const Jet& x)>;
using QJetFn = std::function<QJet(const QJet& x)>;

inline constexpr double kFastDecay = std::numeric_limits<double>::infinity();

// Smooth function u(r) on (0, inf), stored as a map x = ln r -> jet of u.
// origin_exponent a0: u ~ r^{a0} as r -> 0.
// decay_exponent delta: u ~ r^{-delta} as r -> inf (kFastDecay for faster
// than any power).
//
// A profile may also carry a quad-precision version of the same map. Residuals
// of the fourth-order equation lose about 2d decimal digits per decade of r
// (the operator annihilates the leading far-field terms), so they are
// evaluated in quad precision when it is available.
class RadialProfile {
 public:
  RadialProfile(JetFn f, double origin_exponent, double decay_exponent,
                int max_order = Jet::kMaxOrder);
  RadialProfile(JetFn f, QJetFn qf, double origin_exponent, double decay_exponent,
                int max_order = Jet::kMaxOrder);

  // Builds both precisions from one generic callable taking Jet or QJet.
  template <class F>
  static RadialProfile generic(F f, double origin_exponent, double decay_exponent,
                               int max_order = Jet::kMaxOrder) {
    return RadialProfile(JetFn(f), QJetFn(f), origin_exponent, decay_exponent, max_order);
  }

  // Same profile with exponents read off the log-log slope at |ln r| = 30.
  static RadialProfile with_measured_exponents(JetFn f, int max_order = Jet::kMaxOrder,
                                               QJetFn qf = nullptr);

  Jet log_jet(double x) const;
  Jet log_jet(const Jet& x) const { return f_(x); }
  const JetFn& jet_fn() const { return f_; }
  bool has_quad() const { return static_cast<bool>(qf_); }
  const QJetFn& quad_fn() const { return qf_; }

  double eval(double r) const;
  // d^k u / dr^k for k in 1..max_order.
  double deriv(double r, int k) const;
  // (r d/dr)^k u.
  double theta_deriv(double r, int k) const;
  // Log-log slope d ln|u| / d ln r.
  double log_slope(double r) const;

  double origin_exponent() const noexcept { return a0_; }
  double decay_exponent() const noexcept { return delta_; }
  int max_order() const noexcept { return order_; }

  RadialProfile scaled(double c) const;

  // Declared exponents agree with the log-log slope at r = 1e-3 and r = 1e3
  // within 5% (or the profile decays faster than r^-50 when delta = inf).
  bool exponents_consistent() const;

 private:
  JetFn f_;
  QJetFn qf_;
  double a0_;
  double delta_;
  int order_;
};

}  // namespace ckn
