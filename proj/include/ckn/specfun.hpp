#pragma once

namespace ckn {

// Log-Gamma, Gamma and Beta on the positive real axis. All functions throw
// DomainError for non-positive or non-finite arguments.

double log_gamma(double x);
double gamma_fn(double x);

// Gamma(a) Gamma(b) / Gamma(a + b), assembled in log space.
double log_beta(double a, double b);
double beta_fn(double a, double b);

}  // namespace ckn
