#include "ckn/specfun.hpp"

#include <cmath>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

void require_positive(double x, const char* who) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  // lgamma_r is the re-entrant variant; std::lgamma writes the global signgam.
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  return std::tgamma(x);
}

double log_beta(double a, double b) {
  require_positive(a, "beta_fn");
  require_positive(b, "beta_fn");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

}  // namespace ckn
