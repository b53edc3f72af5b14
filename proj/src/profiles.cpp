#include "ckn/profiles.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include "ckn/errors.hpp"
#include "ckn/specfun.hpp"

namespace ckn {
namespace {

double gamma_m(double M) { return (M - 4.0) * (M - 2.0) * M * (M + 2.0); }

// (theta^2 + c theta) f
template <class T>
BasicJet<T> radial_operator(const BasicJet<T>& f, T c) {
  const BasicJet<T> t1 = theta(f);
  return theta(t1) + c * t1;
}

template <class T>
double euler_lagrange_residual_at(const std::function<BasicJet<T>(const BasicJet<T>&)>& u, const Params& p,
                       double r) {
  const T a = p.alpha(), b = p.beta();
  const T c = T(p.N() - 2) + a;
  const T h = T(p.N() - 4) + 2 * a - b;
  const T ps = 2 * (T(p.N()) + b) / h;
  const BasicJet<T> x = BasicJet<T>::variable(math::log(T(r)));
  const BasicJet<T> uj = u(x);
  const BasicJet<T> inner = exp((a - 2 - b) * x) * radial_operator(uj, c);
  const T lhs = (exp((a - 2) * x) * radial_operator(inner, c)).value();
  const T uv = uj.value();
  const T rhs = math::exp(b * x.value()) * math::pow(math::abs(uv), ps - 2) * uv;
  return double(math::abs(lhs - rhs) / (math::abs(lhs) + math::abs(rhs) + T(1e-300)));
}

}  // namespace

double amplitude_constant(const Params& p) {
  const double N = p.N(), a = p.alpha(), b = p.beta();
  const double h = p.homogeneity();
  const double base = h * (N - 2.0 + a) * (N + b) * (N + 2.0 - a + 2.0 * b);
  return std::exp(h / (4.0 * p.width()) * std::log(base));
}

RadialProfile extremal(const Params& p, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("extremal: lambda must be positive");
  const int N = p.N();
  const double al = p.alpha(), be = p.beta();
  const double logc = std::log(amplitude_constant(p)) + 0.5 * p.homogeneity() * std::log(lambda);
  const double shift = std::log(lambda);
  auto f = [=](const auto& x) {
    using T = scalar_of<decltype(x)>;
    const T d = 2 + T(be) - T(al);
    const T h = T(N - 4) + 2 * T(al) - T(be);
    return exp(T(logc) - (h / d) * softplus(d * (x + T(shift))));
  };
  return RadialProfile::generic(f, 0.0, p.homogeneity());
}

double b_closed(double M) {
  if (!(M > 4.0)) throw DomainError("b_closed: need M > 4");
  const double lg = 2.0 * log_gamma(0.5 * M) - std::log(2.0) - log_gamma(M);
  return gamma_m(M) * std::exp(4.0 / M * lg);
}

double s_r_closed(const Params& p) {
  const auto d = derive(p);
  const double e = 4.0 / d.M;
  return std::exp((e - 4.0) * std::log(d.q) + e * std::log(d.omega)) * b_closed(d.M);
}

double s_0_closed(int N) {
  if (N < 5) throw DomainError("s_0_closed: need N >= 5");
  const double n = N;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 * n * (n - 4.0) * (n * n - 4.0) *
         std::exp(4.0 / n * (log_gamma(0.5 * n) - log_gamma(n)));
}

RadialProfile weighted_laplacian(const RadialProfile& u, double alpha, int N) {
  if (u.max_order() < 2) throw DomainError("weighted_laplacian: profile needs two derivatives");
  const JetFn f = u.jet_fn();
  const QJetFn qf = u.quad_fn();
  QJetFn qout = nullptr;
  if (qf) {
    qout = [qf, N, alpha](const QJet& x) {
      const quad a = alpha;
      return exp((a - 2) * x) * radial_operator(qf(x), quad(N - 2) + a);
    };
  }
  return RadialProfile::with_measured_exponents(
      [f, N, alpha](const Jet& x) {
        return exp((alpha - 2.0) * x) * radial_operator(f(x), N - 2.0 + alpha);
      },
      u.max_order() - 2, qout);
}

RadialProfile times_power(const RadialProfile& u, double e) {
  const JetFn f = u.jet_fn();
  const QJetFn qf = u.quad_fn();
  QJetFn qout = nullptr;
  if (qf) qout = [qf, e](const QJet& x) { return exp(x * e) * qf(x); };
  return RadialProfile([f, e](const Jet& x) { return exp(e * x) * f(x); }, qout,
                       u.origin_exponent() + e, u.decay_exponent() - e, u.max_order());
}

std::vector<double> default_residual_samples() {
  std::vector<double> r(25);
  for (int i = 0; i < 25; ++i) r[i] = std::pow(10.0, -2.0 + 4.0 * i / 24.0);
  return r;
}

double euler_lagrange_residual(const RadialProfile& u, const Params& p, const std::vector<double>& samples) {
  if (u.max_order() < 4) throw DomainError("euler_lagrange_residual: profile needs four derivatives");
  double worst = 0.0;
  for (double r : samples) {
    if (!(r > 0.0)) throw DomainError("euler_lagrange_residual: sample points must be positive");
    const double res = u.has_quad() ? euler_lagrange_residual_at<quad>(u.quad_fn(), p, r)
                                    : euler_lagrange_residual_at<double>(u.jet_fn(), p, r);
    worst = std::max(worst, res);
  }
  return worst;
}

double autonomous_residual(const JetFn& phi, double M, double t) {
  const Jet j = phi(Jet::variable(t));
  const double f = j.value();
  const double t4 = j.derivative(4);
  const double t2 = -0.5 * ((M - 2.0) * (M - 2.0) + 4.0) * j.derivative(2);
  const double t0 = M * M * (M - 4.0) * (M - 4.0) / 16.0 * f;
  const double nl = std::pow(std::abs(f), 8.0 / (M - 4.0)) * f;
  return std::abs(t4 + t2 + t0 - nl) /
         (std::abs(t4) + std::abs(t2) + std::abs(t0) + std::abs(nl) + 1e-300);
}

double EmdenFowler::residual(double t) const { return autonomous_residual(phi, M, t); }

EmdenFowler emden_fowler(const RadialProfile& u, const Params& p) {
  const auto d = derive(p);
  const double k = 0.5 * (d.M - 4.0);
  const double logq = k * std::log(d.q);
  const double q = d.q;
  const JetFn f = u.jet_fn();
  return {[=](const Jet& t) { return exp(logq - k * t) * f(-q * t); }, d.M};
}

RadialProfile profile_from_emden_fowler(const JetFn& phi, const Params& p) {
  const auto d = derive(p);
  const double k = 0.5 * (d.M - 4.0);
  const double logq = -k * std::log(d.q);
  const double q = d.q;
  return RadialProfile::with_measured_exponents(
      [=](const Jet& x) { return exp(logq - (k / q) * x) * phi((-1.0 / q) * x); });
}

JetFn autonomous_ground_state(double M) {
  if (!(M > 4.0)) throw DomainError("autonomous_ground_state: need M > 4");
  const double k = 0.5 * (M - 4.0);
  const double loga = (M - 4.0) / 8.0 * std::log(gamma_m(M));
  // ln(2 cosh t) = softplus(2t) - t
  return [=](const Jet& t) { return exp(loga - k * (softplus(2.0 * t) - t)); };
}

RadialProfile kernel_mode(const Params& p, KernelKind which) {
  const int N = p.N();
  const double al = p.alpha(), be = p.beta();
  const double d = p.width();
  const double kappa = (N - 2.0 + al) / d;
  if (which == KernelKind::Z0) {
    // 1 - r^d = -tanh(d x / 2) (1 + r^d)
    auto f = [=](const auto& x) {
      using T = scalar_of<decltype(x)>;
      const T dt = 2 + T(be) - T(al);
      const T k = (T(N - 2) + T(al)) / dt;
      return -tanh(x * (dt / 2)) * exp((1 - k) * softplus(dt * x));
    };
    return RadialProfile::generic(f, 0.0, p.homogeneity());
  }
  auto f = [=](const auto& x) {
    using T = scalar_of<decltype(x)>;
    const T dt = 2 + T(be) - T(al);
    const T k = (T(N - 2) + T(al)) / dt;
    return exp((dt / 2) * x - k * softplus(dt * x));
  };
  return RadialProfile::generic(f, 0.5 * d, kappa * d - 0.5 * d);
}

}  // namespace ckn
