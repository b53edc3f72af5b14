#include "ckn/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

// C(n, r) for small non-negative integers; 0 when r > n.
long long binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// Jacobi polynomials P_0..P_{J-1} with parameters (a, b) evaluated on a jet.
std::vector<Jet> jacobi(int J, double a, double b, const Jet& z) {
  std::vector<Jet> P;
  P.reserve(J);
  P.push_back(Jet::constant(1.0, z.order));
  if (J > 1) P.push_back((a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0));
  for (int n = 2; n < J; ++n) {
    const double s = 2.0 * n + a + b;
    const double a1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double a2 = (s - 1.0) * (a * a - b * b);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    P.push_back(((a2 + a3 * z) * P[n - 1] - a4 * P[n - 2]) / a1);
  }
  return P;
}

}  // namespace

ModeData mode_data(int k, const Params& p) {
  if (k < 0) throw DomainError("mode_data: k must be non-negative");
  const int N = p.N();
  ModeData m{};
  m.k = k;
  m.lambda_k = double(k) * (N - 2 + k);
  m.l_k = binomial(N + k - 1, N - 1) - binomial(N + k - 3, N - 1);
  m.varpi_k = k * (derive(p).M - 2.0 + k);
  return m;
}

double gamma_m(double M) {
  if (!(M > 4.0)) throw DomainError("gamma_m: need M > 4");
  return (M - 4.0) * (M - 2.0) * M * (M + 2.0);
}

double linearized_weight(double M) {
  if (!(M > 4.0)) throw DomainError("linearized_weight: need M > 4");
  return (M + 4.0) * (M - 2.0) * M * (M + 2.0);
}

RadialProfile kernel_x1(const Params& p) {
  const double M = derive(p).M;
  const double c = 0.5 * (M - 2.0);
  return RadialProfile([c](const Jet& y) { return exp(y - c * softplus(2.0 * y)); }, 1.0, M - 3.0);
}

RadialProfile kernel_x0(const Params& p) {
  const double M = derive(p).M;
  const double c = 0.5 * (M - 2.0);
  // 1 - s^2 = -tanh(y) (1 + s^2)
  return RadialProfile([c](const Jet& y) { return -tanh(y) * exp((1.0 - c) * softplus(2.0 * y)); },
                       0.0, M - 4.0);
}

ModeForm mode_quadratic_form(const RadialProfile& X, int k, const Params& p, double tol) {
  if (k < 0) throw DomainError("mode_quadratic_form: k must be non-negative");
  const auto d = derive(p);
  const double M = d.M;
  const double a0 = X.origin_exponent(), delta = X.decay_exponent();
  if (!(M - 4.0 + 2.0 * a0 > 0.0) || !(M + 2.0 * a0 > 0.0)) {
    throw DomainError("mode_quadratic_form: integral diverges at s = 0");
  }
  if (!(M - 4.0 - 2.0 * delta < 0.0)) {
    throw DomainError("mode_quadratic_form: integral diverges at s = inf");
  }
  const double shift = d.q * d.q * mode_data(k, p).lambda_k;
  const auto r = integrate_line_vec(
      [&](double y, double* out) {
        const Jet j = X.log_jet(y);
        const double DX = j.derivative(2) + (M - 2.0) * j.derivative(1) - shift * j.value();
        out[0] = weighted_square(M - 4.0, y, DX);
        const double v = j.value();
        out[1] = v == 0.0 ? 0.0
                          : std::exp(M * y - 4.0 * softplus(Jet::constant(2.0 * y, 0)).value() +
                                     2.0 * std::log(std::abs(v)));
      },
      2, tol);
  ModeForm f{};
  f.kinetic = r.values[0];
  f.potential = linearized_weight(M) * r.values[1];
  f.value = f.kinetic - f.potential;
  return f;
}

RitzResult ritz_min_eig(int k, const Params& p, int J, double tol) {
  if (J < 4) throw DomainError("ritz_min_eig: need J >= 4");
  if (k < 0) throw DomainError("ritz_min_eig: k must be non-negative");
  const auto d = derive(p);
  const double M = d.M;
  const int kp = (k == 1) ? 1 : k;
  const int m = (kp >= 0.5 * M) ? static_cast<int>(std::floor((kp - 0.5 * M) / 2.0)) + 1 : 0;
  const double c = 0.5 * (M - 2.0) + m;
  // With z = tanh(y) the Gram weight becomes (1-z)^a (1+z)^b, so Jacobi
  // polynomials make B nearly the identity.
  const double ja = 0.5 * M - kp + 1.0 + 2.0 * m;
  const double jb = kp + 0.5 * M - 1.0;
  const double shift = d.q * d.q * mode_data(k, p).lambda_k;
  const double weight = linearized_weight(M);
  const int npair = J * (J + 1) / 2;

  const auto res = integrate_line_vec(
      [&](double y, double* out) {
        const Jet yj = Jet::variable(y, 2);
        const Jet sp = softplus(2.0 * yj);
        const Jet ell = kp * yj - c * sp;  // log of the common factor
        const auto P = jacobi(J, ja, jb, tanh(yj));
        const double l1 = ell.derivative(1), l2 = ell.derivative(2);
        std::vector<double> G(J), V(J);
        for (int i = 0; i < J; ++i) {
          const double p0 = P[i].value(), p1 = P[i].derivative(1), p2 = P[i].derivative(2);
          // (theta^2 + (M-2) theta - shift)(e^ell P) / e^ell
          G[i] = (l2 + l1 * l1) * p0 + 2.0 * l1 * p1 + p2 + (M - 2.0) * (l1 * p0 + p1) - shift * p0;
          V[i] = p0;
        }
        const double wk = std::exp((M - 4.0) * y + 2.0 * ell.value());
        const double wb = weight * std::exp(M * y - 4.0 * sp.value() + 2.0 * ell.value());
        int idx = 0;
        for (int i = 0; i < J; ++i) {
          for (int j = i; j < J; ++j, ++idx) {
            out[idx] = wk * G[i] * G[j];
            out[npair + idx] = wb * V[i] * V[j];
          }
        }
      },
      2 * npair, tol);

  Eigen::MatrixXd K(J, J), B(J, J);
  int idx = 0;
  for (int i = 0; i < J; ++i) {
    for (int j = i; j < J; ++j, ++idx) {
      K(i, j) = K(j, i) = res.values[idx];
      B(i, j) = B(j, i) = res.values[npair + idx] / weight;
    }
  }
  const Eigen::VectorXd scale = B.diagonal().cwiseSqrt().cwiseInverse();
  K = scale.asDiagonal() * K * scale.asDiagonal();
  B = scale.asDiagonal() * B * scale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(B, Eigen::EigenvaluesOnly);
  const double lo = gram.eigenvalues().minCoeff(), hi = gram.eigenvalues().maxCoeff();
  const double cond = lo > 0.0 ? hi / lo : INFINITY;
  if (!(cond <= 1e12)) {
    std::ostringstream os;
    os << "ritz_min_eig: Gram matrix condition " << cond << " exceeds 1e12; use a smaller J";
    throw ConditioningError(os.str(), cond);
  }

  const Eigen::MatrixXd A = K - weight * B;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A, B);
  if (ges.info() != Eigen::Success) {
    throw ConditioningError("ritz_min_eig: generalized eigensolver failed", cond);
  }
  RitzResult out{};
  out.min_eigenvalue = ges.eigenvalues()(0);
  const Eigen::VectorXd v = ges.eigenvectors().col(0);
  out.coefficients.assign(v.data(), v.data() + J);
  out.basis_size = J;
  out.gram_condition = cond;
  return out;
}

double fs_locate(int N, double alpha, double tol, int J) {
  if (!(alpha > 0.0)) throw DomainError("fs_locate: need alpha > 0");
  if (!(tol > 0.0)) throw DomainError("fs_locate: tol must be positive");
  const double bmax = N * alpha / (N - 2.0);
  double lo = alpha - 2.0 + 0.1 * (bmax - (alpha - 2.0));
  double hi = 0.99 * bmax;
  auto rho = [&](double beta) { return ritz_min_eig(1, Params::validate(N, alpha, beta), J).min_eigenvalue; };
  if (!(rho(lo) > 0.0) || !(rho(hi) < 0.0)) {
    throw BracketError("fs_locate: mode-1 Ritz value has no sign change on the bracket");
  }
  while (hi - lo > 0.25 * tol) {
    const double mid = 0.5 * (lo + hi);
    (rho(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ckn
