#pragma once

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <type_traits>

namespace ckn {

using quad = __float128;

namespace math {

inline double exp(double v) { return std::exp(v); }
inline double log(double v) { return std::log(v); }
inline double log1p(double v) { return std::log1p(v); }
inline double tanh(double v) { return std::tanh(v); }
inline double pow(double a, double b) { return std::pow(a, b); }
inline double abs(double v) { return std::abs(v); }

inline quad exp(quad v) { return expq(v); }
inline quad log(quad v) { return logq(v); }
inline quad log1p(quad v) { return log1pq(v); }
inline quad tanh(quad v) { return tanhq(v); }
inline quad pow(quad a, quad b) { return powq(a, b); }
inline quad abs(quad v) { return fabsq(v); }

}  // namespace math

// Truncated Taylor expansion f(x0 + h) = sum_k c[k] h^k, k <= order <= 4.
// Radial profiles are written as functions of x = ln r; applying the
// operator theta = r d/dr to a jet is then a coefficient shift.
template <class T>
struct BasicJet {
  using scalar = T;
  static constexpr int kMaxOrder = 4;

  std::array<T, kMaxOrder + 1> c{};
  int order = kMaxOrder;

  static BasicJet constant(T v, int order = kMaxOrder) {
    BasicJet j;
    j.order = order;
    j.c[0] = v;
    return j;
  }

  static BasicJet variable(T x0, int order = kMaxOrder) {
    BasicJet j = constant(x0, order);
    if (order >= 1) j.c[1] = T(1);
    return j;
  }

  T value() const { return c[0]; }

  // k-th derivative with respect to the expansion variable.
  T derivative(int k) const {
    static constexpr int fact[] = {1, 1, 2, 6, 24};
    return T(fact[k]) * c[k];
  }
};

using Jet = BasicJet<double>;
using QJet = BasicJet<quad>;

// Plain numbers that mix with a jet of scalar type T.
template <class S, class T>
concept JetScalar = std::same_as<S, T> || std::same_as<S, double> || std::same_as<S, int>;

template <class T>
BasicJet<T> operator-(const BasicJet<T>& a) {
  BasicJet<T> r = a;
  for (T& v : r.c) v = -v;
  return r;
}

template <class T>
BasicJet<T> operator+(const BasicJet<T>& a, const BasicJet<T>& b) {
  BasicJet<T> r;
  r.order = std::min(a.order, b.order);
  for (int k = 0; k <= r.order; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

template <class T>
BasicJet<T> operator-(const BasicJet<T>& a, const BasicJet<T>& b) {
  return a + (-b);
}

template <class T>
BasicJet<T> operator*(const BasicJet<T>& a, const BasicJet<T>& b) {
  BasicJet<T> r;
  r.order = std::min(a.order, b.order);
  for (int k = 0; k <= r.order; ++k) {
    T s = 0;
    for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
    r.c[k] = s;
  }
  return r;
}

template <class T, JetScalar<T> S>
BasicJet<T> operator+(const BasicJet<T>& a, S s) {
  BasicJet<T> r = a;
  r.c[0] += T(s);
  return r;
}
template <class T, JetScalar<T> S>
BasicJet<T> operator+(S s, const BasicJet<T>& a) {
  return a + s;
}
template <class T, JetScalar<T> S>
BasicJet<T> operator-(const BasicJet<T>& a, S s) {
  return a + (-T(s));
}
template <class T, JetScalar<T> S>
BasicJet<T> operator-(S s, const BasicJet<T>& a) {
  return (-a) + s;
}
template <class T, JetScalar<T> S>
BasicJet<T> operator*(const BasicJet<T>& a, S s) {
  BasicJet<T> r = a;
  for (T& v : r.c) v *= T(s);
  return r;
}
template <class T, JetScalar<T> S>
BasicJet<T> operator*(S s, const BasicJet<T>& a) {
  return a * s;
}
template <class T, JetScalar<T> S>
BasicJet<T> operator/(const BasicJet<T>& a, S s) {
  return a * (T(1) / T(s));
}

// Composes g with a scalar function whose derivatives at g.value() are d[0..order].
template <class T>
BasicJet<T> compose(const BasicJet<T>& g, const std::array<T, BasicJet<T>::kMaxOrder + 1>& d) {
  BasicJet<T> h = g;
  h.c[0] = 0;
  BasicJet<T> out = BasicJet<T>::constant(d[0], g.order);
  BasicJet<T> power = BasicJet<T>::constant(T(1), g.order);
  T fact = 1;
  for (int k = 1; k <= g.order; ++k) {
    power = power * h;
    fact *= k;
    // power vanishes below degree k; skipping those slots keeps 0 * inf out.
    for (int m = k; m <= g.order; ++m) out.c[m] += power.c[m] * (d[k] / fact);
  }
  return out;
}

template <class T>
BasicJet<T> exp(const BasicJet<T>& g) {
  const T e = math::exp(g.value());
  if (e == T(0)) return BasicJet<T>::constant(T(0), g.order);
  return compose(g, {e, e, e, e, e});
}

template <class T>
BasicJet<T> log(const BasicJet<T>& g) {
  const T v = g.value();
  const T i = T(1) / v;
  return compose(g, {math::log(v), i, -i * i, 2 * i * i * i, -6 * i * i * i * i});
}

template <class T>
BasicJet<T> reciprocal(const BasicJet<T>& g) {
  const T i = T(1) / g.value();
  const T i2 = i * i;
  return compose(g, {i, -i2, 2 * i2 * i, -6 * i2 * i2, 24 * i2 * i2 * i});
}

template <class T>
BasicJet<T> operator/(const BasicJet<T>& a, const BasicJet<T>& b) {
  return a * reciprocal(b);
}
template <class T, JetScalar<T> S>
BasicJet<T> operator/(S s, const BasicJet<T>& b) {
  return reciprocal(b) * s;
}

// g^a for g.value() > 0.
template <class T, JetScalar<T> S>
BasicJet<T> pow(const BasicJet<T>& g, S exponent) {
  const T a = T(exponent);
  const T v = g.value();
  std::array<T, BasicJet<T>::kMaxOrder + 1> d{};
  T coef = 1;
  for (int k = 0; k <= BasicJet<T>::kMaxOrder; ++k) {
    d[k] = coef * math::pow(v, a - T(k));
    coef *= (a - T(k));
  }
  return compose(g, d);
}

// log(1 + e^g), accurate for all g.
template <class T>
BasicJet<T> softplus(const BasicJet<T>& g) {
  const T y = g.value();
  const T v = y > 0 ? y + math::log1p(math::exp(-y)) : math::log1p(math::exp(y));
  const T s = T(1) / (T(1) + math::exp(-y));   // sigmoid(y)
  const T sc = T(1) / (T(1) + math::exp(y));   // 1 - sigmoid(y)
  const T s1 = s * sc;
  return compose(g, {v, s, s1, s1 * (sc - s), s1 * (T(1) - 6 * s * sc)});
}

template <class T>
BasicJet<T> tanh(const BasicJet<T>& g) {
  const T y = g.value();
  const T t = math::tanh(y);
  const T e = math::exp(-2 * math::abs(y));
  const T sech2 = 4 * e / ((1 + e) * (1 + e));
  return compose(g, {t, sech2, -2 * t * sech2, sech2 * (4 * t * t - 2 * sech2),
                     8 * t * sech2 * (2 * sech2 - t * t)});
}

// theta = d/dx applied to the jet; loses one order.
template <class T>
BasicJet<T> theta(const BasicJet<T>& a) {
  BasicJet<T> r;
  r.order = std::max(a.order - 1, 0);
  for (int k = 0; k < a.order; ++k) r.c[k] = T(k + 1) * a.c[k + 1];
  return r;
}

// Scalar type of a jet argument, for generic profile lambdas.
template <class J>
using scalar_of = typename std::decay_t<J>::scalar;

}  // namespace ckn
