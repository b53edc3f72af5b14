#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ckn/errors.hpp"
#include "ckn/params.hpp"
#include "ckn/radial_profile.hpp"

namespace ckn {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int nodes = 0;
};

struct VecQuadResult {
  std::vector<double> values;
  double abs_error_estimate = 0.0;  // max over components
  int nodes = 0;
};

inline constexpr double kDefaultTol = 1e-10;

// Node cap per integral; defaults to 2^16. Set once at start-up (the CLI reads
// it from the config file), not while integrals are running.
int node_cap();
void set_node_cap(int cap);

// exp(a x + 2 ln|F|) = e^{ax} F^2, safe against overflow/underflow of the factors.
inline double weighted_square(double a, double x, double F) {
  if (F == 0.0) return 0.0;
  return std::exp(a * x + 2.0 * std::log(std::abs(F)));
}

// sign(F) exp(a x + ln|F|): the product e^{ax} F without overflow when e^{ax}
// is huge and F tiny.
inline double weighted_term(double a, double x, double F) {
  if (F == 0.0) return 0.0;
  const double v = std::exp(a * x + std::log(std::abs(F)));
  return F < 0 ? -v : v;
}

namespace detail {

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double total() const { return sum + comp; }
};

inline constexpr double kXMax = 745.0;
inline constexpr double kStep0 = 0.5;
inline constexpr int kMinLevels = 3;
inline constexpr double kNegligible = 1e-22;
inline constexpr double kTailTolerance = 1e-14;

}  // namespace detail

// Integral over the real line of a vector integrand g(x, out[0..n)) that decays
// at least exponentially in x at both ends. Substitution x = sinh(t) and
// trapezoid rule with step halving (double-exponential quadrature). Summation
// order is fixed (ascending t within each level), so results are bit-stable.
template <class G>
VecQuadResult integrate_line_vec(G&& g, std::size_t n, double tol = kDefaultTol) {
  if (!(tol > 0.0)) throw DomainError("quadrature: tol must be positive");
  const double tmax = std::asinh(detail::kXMax);
  const int K = static_cast<int>(std::ceil(tmax / detail::kStep0));
  const double h0 = tmax / K;
  const int cap = node_cap();
  std::vector<double> buf(n), level_sum(n), prev(n);
  std::vector<detail::CompensatedSum> acc(n);
  int nodes = 0;

  // Evaluates the weighted integrand at t; returns the largest component, or
  // a negative number if some component is not finite.
  auto try_eval = [&](double t, double* out) {
    const double w = std::cosh(t);
    g(std::sinh(t), buf.data());
    ++nodes;
    double big = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = buf[i] * w;
      if (!std::isfinite(out[i])) return -1.0;
      big = std::max(big, std::abs(out[i]));
    }
    return big;
  };
  auto eval = [&](double t, double* out) {
    const double big = try_eval(t, out);
    if (big < 0.0) {
      throw DomainError("quadrature: non-finite integrand at x = " + std::to_string(std::sinh(t)));
    }
    return big;
  };

  // Level 0 fixes the window: walk outwards from t = 0 until the integrand has
  // been negligible for several consecutive nodes (or overflows after becoming
  // negligible). Nothing beyond the window is evaluated afterwards.
  const int n_nodes0 = 2 * K + 1;
  std::vector<double> terms(std::size_t(n_nodes0) * n);
  auto slot = [&](int k) { return terms.data() + std::size_t(k + K) * n; };
  double peak = eval(0.0, slot(0));
  int lo = 0, hi = 0;
  for (int dir : {1, -1}) {
    int quiet = 0;
    int k = 0;
    while (std::abs(k) < K) {
      k += dir;
      const double big = try_eval(k * h0, slot(k));
      if (big < 0.0) {
        // Overflow of an already negligible tail ends the window.
        if (quiet > 0) {
          k -= dir;
          quiet = 3;
          break;
        }
        eval(k * h0, slot(k));
      }
      peak = std::max(peak, big);
      quiet = (peak > 0.0 && big <= detail::kNegligible * peak) ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
    if (quiet < 3 && peak > 0.0) {
      const double big = std::abs(*std::max_element(slot(k), slot(k) + n,
          [](double a, double b) { return std::abs(a) < std::abs(b); }));
      if (big > detail::kTailTolerance * peak) {
        throw AccuracyError("quadrature: integrand not negligible at the truncation point", 0.0, big);
      }
    }
    (dir > 0 ? hi : lo) = k;
  }
  for (int k = lo; k <= hi; ++k) {
    for (std::size_t i = 0; i < n; ++i) acc[i].add(slot(k)[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    level_sum[i] = h0 * acc[i].total();
    acc[i] = {};
  }

  double h = h0;
  std::vector<double> out(n);
  for (int level = 1;; ++level) {
    prev = level_sum;
    h *= 0.5;
    const int m_lo = lo << level, m_hi = hi << level;
    if (nodes + (m_hi - m_lo) / 2 > cap) {
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(level_sum[i] - prev[i]));
      throw AccuracyError("quadrature: node cap reached before convergence",
                          n ? level_sum[0] : 0.0, err);
    }
    for (int k = m_lo + 1; k < m_hi; k += 2) {
      eval(k * h, out.data());
      for (std::size_t i = 0; i < n; ++i) acc[i].add(out[i]);
    }
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      level_sum[i] = 0.5 * prev[i] + h * acc[i].total();
      acc[i] = {};
      scale = std::max(scale, std::abs(level_sum[i]));
      err = std::max(err, std::abs(level_sum[i] - prev[i]));
    }
    if (level >= detail::kMinLevels && err <= tol * scale) return {level_sum, err, nodes};
  }
}

QuadResult integrate_line(const std::function<double(double)>& g, double tol = kDefaultTol);

// Integral over (0, inf) of f(s) ds, via s = e^x.
QuadResult integrate_semiinfinite(const std::function<double(double)>& f,
                                  double tol = kDefaultTol);

// Weighted norms of radial profiles. A mode-k function u = f(r) Y_k has
// angular factor int Y_k^2 = angular; the radial case is k = 0, angular = omega.
double norm_sq(const RadialProfile& u, const Params& p);
double norm_sq_mode(const RadialProfile& f, const Params& p, int k, double angular,
                    double tol = kDefaultTol);
double norm_star(const RadialProfile& u, const Params& p, double tol = kDefaultTol);
double quotient_radial(const RadialProfile& u, const Params& p, double tol = kDefaultTol);

}  // namespace ckn
