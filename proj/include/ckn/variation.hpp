#pragma once

#include <string>
#include <string_view>

#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

// Second variation of the quotient at U along the mode-1 kernel direction
// X1 = s (1+s^2)^{-(M-2)/2}, in the factored form
//   value = prefactor * factor * (2 I1 + ((2M-5) + mu) I2),
// prefactor = (omega/N) (d/2)^3, mu = q^2 (N-1), factor = mu - (M-1),
// I1 = int X1'^2 s^{M-4} ds, I2 = int X1^2 s^{M-5} ds.
struct SecondVariation {
  double value;
  double mu;
  double factor;
  double I1;  // Beta-function reduction
  double I2;
  double prefactor;
  double I1_quadrature;
  double I2_quadrature;
  // prefactor * Q_1(X1), the mode-1 linearized form evaluated directly. Same
  // sign as value; the two differ in magnitude (see README).
  double direct_value;
};

SecondVariation second_variation(const Params& p);

// I(U + eps Z_i) for the mode-1 kernel element Z_i = Z1(r) x_i/|x|. The
// numerator uses mode orthogonality, the denominator a 2D (r, angle) rule.
double directional_quotient(const Params& p, double eps, double tol = kDefaultTol);

enum class Verdict { Breaking, NotBreaking, Boundary, Inconsistent };

std::string_view to_string(Verdict v);

// Verdict implied by the region classification: Breaking above the threshold
// curve for alpha > 0 (including the upper boundary), Boundary on the curve,
// NotBreaking elsewhere.
Verdict expected_verdict(const Params& p);

struct BreakingCertificate {
  int N;
  double alpha;
  double beta;
  double eps;
  double s_r;
  double second_variation;
  double directional_quotient;
  double ritz_rho1;
  // Dimensionless witnesses whose signs are compared with tolerance tol:
  // factor/(M-1); the Richardson-extrapolated curvature (I(U+eps Z) - I(U))/eps^2
  // divided by ||Z||^2/||U||_*^2; rho1/((M+4)(M-2)M(M+2)).
  double variation_witness;
  double quotient_witness;
  double spectral_witness;
  Verdict verdict;
  Verdict expected;
  bool witnesses_agree;
  std::string discrepancy;  // empty when verdict == expected and witnesses agree

  bool consistent() const { return witnesses_agree && verdict == expected; }
};

BreakingCertificate certify(const Params& p, double eps = 1e-2, double tol = 1e-6);

}  // namespace ckn
