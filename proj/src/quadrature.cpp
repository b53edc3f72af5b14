#include "ckn/quadrature.hpp"

#include <atomic>
#include <sstream>

namespace ckn {
namespace {

std::atomic<int> g_node_cap{1 << 16};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Integrand e^{a x} |F|^m with F ~ r^{e0} at 0 and r^{-e1} at infinity.
void require_convergent(const char* what, double a, double m, double e0, double e1) {
  if (!(a + m * e0 > 0.0)) {
    throw DomainError(std::string(what) + ": integral diverges at r = 0 (integrand ~ r^" +
                      num(a + m * e0 - 1.0) + ")");
  }
  if (!(a - m * e1 < 0.0)) {
    throw DomainError(std::string(what) + ": integral diverges at r = inf (integrand ~ r^" +
                      num(a - m * e1 - 1.0) + ")");
  }
}

}  // namespace

int node_cap() { return g_node_cap.load(std::memory_order_relaxed); }

void set_node_cap(int cap) {
  if (cap < 64) throw DomainError("node cap must be at least 64");
  g_node_cap.store(cap, std::memory_order_relaxed);
}

QuadResult integrate_line(const std::function<double(double)>& g, double tol) {
  auto r = integrate_line_vec([&](double x, double* out) { out[0] = g(x); }, 1, tol);
  return {r.values[0], r.abs_error_estimate, r.nodes};
}

QuadResult integrate_semiinfinite(const std::function<double(double)>& f, double tol) {
  return integrate_line(
      [&](double x) {
        const double s = std::exp(x);
        const double v = f(s);
        return v == 0.0 ? 0.0 : v * s;
      },
      tol);
}

double norm_sq(const RadialProfile& u, const Params& p) {
  return norm_sq_mode(u, p, 0, derive(p).omega);
}

double norm_sq_mode(const RadialProfile& f, const Params& p, int k, double angular, double tol) {
  if (k < 0) throw DomainError("norm_sq: mode index must be non-negative");
  const double a = p.N() + 2.0 * p.alpha() - p.beta() - 4.0;
  require_convergent("norm_sq", a, 2.0, f.origin_exponent(), f.decay_exponent());
  const double c1 = p.N() - 2.0 + p.alpha();
  const double lambda = k * (p.N() - 2.0 + k);
  const auto r = integrate_line(
      [&](double x) {
        const Jet j = f.log_jet(x);
        const double Pf = j.derivative(2) + c1 * j.derivative(1) - lambda * j.value();
        return weighted_square(a, x, Pf);
      },
      tol);
  return angular * r.value;
}

double norm_star(const RadialProfile& u, const Params& p, double tol) {
  const double ps = derive(p).p_star;
  const double a = p.N() + p.beta();
  require_convergent("norm_star", a, ps, u.origin_exponent(), u.decay_exponent());
  const auto r = integrate_line(
      [&](double x) {
        const double v = u.log_jet(Jet::constant(x, 0)).value();
        return v == 0.0 ? 0.0 : std::exp(a * x + ps * std::log(std::abs(v)));
      },
      tol);
  return std::pow(derive(p).omega * r.value, 1.0 / ps);
}

double quotient_radial(const RadialProfile& u, const Params& p, double tol) {
  const double den = norm_star(u, p, tol);
  if (den == 0.0) throw DomainError("quotient_radial: zero profile");
  return norm_sq_mode(u, p, 0, derive(p).omega, tol) / (den * den);
}

}  // namespace ckn
