#include "ckn/identities.hpp"

#include <cmath>
#include <string>

#include "ckn/errors.hpp"
#include "ckn/profiles.hpp"
#include "ckn/spectral.hpp"

namespace ckn {

namespace {

// int e^{a x} |f|^pw dx converges when a + pw a0 > 0 and a - pw delta < 0.
void require_convergent(const char* what, double a, double pw, const RadialProfile& f) {
  const double a0 = f.origin_exponent(), delta = f.decay_exponent();
  if (!(a + pw * a0 > 0.0)) {
    throw DomainError(std::string(what) + ": integral diverges at the origin");
  }
  if (!(a - pw * delta < 0.0)) {
    throw DomainError(std::string(what) + ": integral diverges at infinity");
  }
}

double lambda_of(int k, int N) { return k * (N - 2.0 + k); }

// Angular integral of Y_k^2.
double angular_factor(int k, int N) {
  const double omega = sphere_area(N);
  return k == 0 ? omega : omega / N;
}

struct Theta {
  double f, f1, f2;  // f, theta f, theta^2 f
};

Theta theta_at(const RadialProfile& u, double x) {
  const Jet j = u.log_jet(Jet::variable(x, 2));
  return {j.value(), j.derivative(1), j.derivative(2)};
}

template <class T>
BasicJet<T> battery_shape(int which, const BasicJet<T>& x) {
  switch (which) {
    case 0: return exp(-2 * softplus(2 * x));
    case 1: return exp(-3 * softplus(2 * x));
    case 2: return exp(-exp(2 * x));
    case 3: return exp(2 * x - 4 * softplus(2 * x));
    default: return exp(T(-1.5) * softplus(4 * x));
  }
}

}  // namespace

std::vector<TestFunction> test_battery() {
  static const char* names[] = {"(1+r^2)^-2", "(1+r^2)^-3", "exp(-r^2)", "r^2(1+r^2)^-4",
                                "(1+r^4)^-1.5"};
  static const double origin[] = {0, 0, 0, 2, 0};
  static const double decay[] = {4, 6, kFastDecay, 6, 6};
  std::vector<TestFunction> out;
  for (int k : {0, 1}) {
    for (int i = 0; i < 5; ++i) {
      auto f = [=](const auto& x) {
        return k == 0 ? battery_shape(i, x) : exp(x) * battery_shape(i, x);
      };
      out.push_back({RadialProfile::generic(f, origin[i] + k, decay[i] - k), k,
                     std::string(k == 0 ? "" : "r*") + names[i] + (k == 0 ? "" : " mode 1")});
    }
  }
  return out;
}

double relative_defect(double a, double b) {
  const double s = std::abs(a) + std::abs(b);
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

LaplacianBoundResult check_laplacian_bound(const TestFunction& u, const Params& p, double tol) {
  const int N = p.N();
  const double al = p.alpha();
  const double a = N + 2.0 * al - p.beta() - 4.0;
  const double lam = lambda_of(u.mode_k, N);
  require_convergent("check_laplacian_bound", a, 2.0, u.radial_part);
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        const Theta t = theta_at(u.radial_part, x);
        out[0] = weighted_square(a, x, t.f2 + (N - 2.0) * t.f1 - lam * t.f);
        out[1] = weighted_square(a, x, t.f2 + (N - 2.0 + al) * t.f1 - lam * t.f);
      },
      2, tol);
  if (r.values[1] == 0.0) throw DomainError("check_laplacian_bound: zero test function");
  const double ratio = r.values[0] / r.values[1];
  const double bound = hardy_lemma_constants(p).C;
  return {ratio, bound, ratio <= bound + 1e-10};
}

double check_energy_identity(const RadialProfile& u, const Params& p, double tol) {
  const int N = p.N();
  const double al = p.alpha();
  const double a = N + 2.0 * al - p.beta() - 4.0;
  require_convergent("check_energy_identity", a, 2.0, u);
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        const Theta t = theta_at(u, x);
        out[0] = -weighted_term(a, x, (t.f2 + (N - 2.0 + al) * t.f1) * t.f);
        out[1] = weighted_square(a, x, t.f);
        out[2] = weighted_square(a, x, t.f1);
      },
      3, tol);
  const double omega = sphere_area(N);
  const double lhs = omega * r.values[0];
  const double rhs = omega * (0.5 * p.width() * a * r.values[1] + r.values[2]);
  return relative_defect(lhs, rhs);
}

double check_expansion(const TestFunction& u, const Params& p, double tol) {
  const int N = p.N();
  const double al = p.alpha(), be = p.beta();
  const double a = N + 2.0 * al - be - 4.0;
  const double lam = lambda_of(u.mode_k, N);
  require_convergent("check_expansion", a, 2.0, u.radial_part);
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        const Theta t = theta_at(u.radial_part, x);
        out[0] = weighted_square(a, x, t.f2 + (N - 2.0 + al) * t.f1 - lam * t.f);
        out[1] = weighted_square(a, x, t.f2 + (N - 2.0) * t.f1 - lam * t.f);
        out[2] = weighted_square(a, x, t.f1);
        out[3] = weighted_square(a, x, t.f);
      },
      4, tol);
  const double ang = angular_factor(u.mode_k, N);
  const double lhs = ang * r.values[0];
  const double grad = r.values[2] + lam * r.values[3];
  const double rhs = ang * (r.values[1] + al * (N - 4.0 + 2.0 * al - be) * grad +
                            al * (2.0 * be - 3.0 * al + 4.0) * r.values[2]);
  return relative_defect(lhs, rhs);
}

double check_pohozaev_identity(const TestFunction& v, int N, double tol) {
  const double a = N - 4.0;
  const double lam = lambda_of(v.mode_k, N);
  require_convergent("check_pohozaev_identity", a, 2.0, v.radial_part);
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        const Theta t = theta_at(v.radial_part, x);
        out[0] = weighted_square(a, x, t.f1) + lam * weighted_square(a, x, t.f);
        out[1] = weighted_term(a, x, t.f1 * (t.f2 + (N - 4.0) * t.f1 - lam * t.f));
      },
      2, tol);
  const double ang = angular_factor(v.mode_k, N);
  return relative_defect(ang * (N - 4.0) * r.values[0], ang * 2.0 * r.values[1]);
}

RellichSobolevConstants rellich_sobolev_constants(int N, double alpha) {
  if (N < 5) throw DomainError("rellich_sobolev_constants: need N >= 5");
  if (!(alpha > 2.0 - N && alpha < 0.0)) {
    throw DomainError("rellich_sobolev_constants: need 2 - N < alpha < 0");
  }
  const double n4 = N - 4.0;
  const double mu = n4 * alpha / (2.0 - N);
  const double g = mu * (2.0 * n4 - mu);
  RellichSobolevConstants c{};
  c.mu = mu;
  c.c_mu1 = (N * N - 4.0 * N + 8.0) / (2.0 * n4 * n4) * g;
  c.c_mu2 = double(N) * N / (16.0 * n4 * n4) * g * g - (N - 2.0) / 2.0 * g;
  c.eta = -n4 * alpha / (2.0 * (N - 2.0));
  return c;
}

double check_power_substitution(const RadialProfile& v, int N, double alpha, double tol) {
  const RellichSobolevConstants c = rellich_sobolev_constants(N, alpha);
  const double pw = 2.0 * N / (N - 4.0);
  const double wu = N + N * alpha / (N - 2.0);
  const RadialProfile u = times_power(v, c.eta);
  require_convergent("check_power_substitution", N, pw, v);
  require_convergent("check_power_substitution", wu, pw, u);
  auto power_term = [pw](double a, double x, double f) {
    return f == 0.0 ? 0.0 : std::exp(a * x + pw * std::log(std::abs(f)));
  };
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        out[0] = power_term(wu, x, u.log_jet(Jet::constant(x, 0)).value());
        out[1] = power_term(N, x, v.log_jet(Jet::constant(x, 0)).value());
      },
      2, tol);
  return relative_defect(r.values[0], r.values[1]);
}

RellichSobolevResult check_rellich_sobolev(const RadialProfile& v, int N, double mu, double tol) {
  if (N < 5) throw DomainError("check_rellich_sobolev: need N >= 5");
  const double n4 = N - 4.0;
  if (!(mu > 0.0 && mu < n4)) throw DomainError("check_rellich_sobolev: need 0 < mu < N - 4");
  // C1, C2 depend on alpha only through mu.
  const RellichSobolevConstants c = rellich_sobolev_constants(N, mu * (2.0 - N) / n4);
  const double pw = 2.0 * N / n4;
  require_convergent("check_rellich_sobolev", n4, 2.0, v);
  require_convergent("check_rellich_sobolev", N, pw, v);
  const auto r = integrate_line_vec(
      [&](double x, double* out) {
        const Theta t = theta_at(v, x);
        out[0] = weighted_square(n4, x, t.f2 + (N - 2.0) * t.f1);
        out[1] = weighted_square(n4, x, t.f1);
        out[2] = weighted_square(n4, x, t.f);
        out[3] = t.f == 0.0 ? 0.0 : std::exp(N * x + pw * std::log(std::abs(t.f)));
      },
      4, tol);
  const double omega = sphere_area(N);
  RellichSobolevResult res{};
  res.lhs = omega * (r.values[0] - c.c_mu1 * r.values[1] + c.c_mu2 * r.values[2]);
  res.rhs = std::pow(1.0 - mu / n4, 4.0 - 4.0 / N) * s_0_closed(N) *
            std::pow(omega * r.values[3], n4 / N);
  res.pass = res.lhs >= res.rhs * (1.0 - 1e-8);
  return res;
}

RadialProfile rellich_sobolev_extremal(int N, double mu, double A, double nu) {
  const double n4 = N - 4.0;
  if (!(mu > 0.0 && mu < n4)) throw DomainError("rellich_sobolev_extremal: need 0 < mu < N - 4");
  if (!(A != 0.0 && nu > 0.0)) throw DomainError("rellich_sobolev_extremal: need A != 0 and nu > 0");
  const double e = 2.0 * (1.0 - mu / n4);
  // log(nu + r^e) = log nu + softplus(e x - log nu)
  auto f = [=](const auto& x) {
    using T = scalar_of<decltype(x)>;
    const T lnu = math::log(T(nu));
    const T sgn = A < 0 ? T(-1) : T(1);
    return sgn * exp(math::log(T(math::abs(T(A)))) - (T(mu) / 2) * x -
                     (T(n4) / 2) * (lnu + softplus(T(e) * x - lnu)));
  };
  return RadialProfile::generic(f, -mu / 2.0, n4 - mu / 2.0);
}

UpperLineEqualityResult check_upper_line_equality(int N, double alpha, double tol) {
  if (!(alpha > 2.0 - N && alpha < 0.0)) throw DomainError("check_upper_line_equality: need 2 - N < alpha < 0");
  const Params p = Params::validate(N, alpha, N * alpha / (N - 2.0));
  UpperLineEqualityResult r{};
  r.quotient = quotient_radial(extremal(p), p, tol);
  r.constant = std::pow(1.0 + alpha / (N - 2.0), 4.0 - 4.0 / N) * s_0_closed(N);
  r.defect = std::abs(r.quotient - r.constant) / r.constant;
  return r;
}

}  // namespace ckn
