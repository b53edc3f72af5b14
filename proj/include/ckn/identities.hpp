#pragma once

#include <string>
#include <vector>

#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/radial_profile.hpp"

namespace ckn {

// u(x) = f(|x|) Y_k(x/|x|) with Y_k a spherical harmonic of degree k. All
// integrals reduce to one dimension through orthonormality of Y_k; radial
// functions are k = 0 (Y_0 normalized so that the angular integral is omega).
struct TestFunction {
  RadialProfile radial_part;
  int mode_k = 0;
  std::string name;
};

// Fixed battery: (1+r^2)^-2, (1+r^2)^-3, e^{-r^2}, r^2 (1+r^2)^-4,
// (1+r^4)^-1.5, each as a radial function and, multiplied by r, as a mode-1
// radial part (the factor r keeps the mode-1 function smooth at the origin).
std::vector<TestFunction> test_battery();

// Relative defect |a - b| / (|a| + |b|), zero when both vanish.
double relative_defect(double a, double b);

struct LaplacianBoundResult {
  double ratio;  // int |x|^{2alpha-beta} |Lap u|^2 / |u|^2
  double bound;  // C from hardy_lemma_constants
  bool pass;
};

LaplacianBoundResult check_laplacian_bound(const TestFunction& u, const Params& p, double tol = kDefaultTol);

// Integration-by-parts identity for w = -|x|^{-beta/2} div(|x|^alpha grad u):
//   int |x|^{alpha-beta/2-2} w u = d (N+2alpha-beta-4)/2 int |x|^{2alpha-beta-4} u^2
//                                  + int |x|^{2alpha-beta-2} |grad u|^2.
// Returns the relative defect. Radial u only.
double check_energy_identity(const RadialProfile& u, const Params& p, double tol = kDefaultTol);

// |u|^2 = int |x|^{2alpha-beta} |Lap u|^2
//         + alpha (N-4+2alpha-beta) int |x|^{2alpha-beta-2} |grad u|^2
//         + alpha (2beta-3alpha+4) int |x|^{2alpha-beta-4} (x . grad u)^2.
double check_expansion(const TestFunction& u, const Params& p, double tol = kDefaultTol);

// (N-4) int |x|^-2 |grad v|^2 = 2 int (x . grad v) div(|x|^-2 grad v).
double check_pohozaev_identity(const TestFunction& v, int N, double tol = kDefaultTol);

struct RellichSobolevConstants {
  double mu;    // (N-4) alpha / (2-N), in (0, N-4)
  double c_mu1;
  double c_mu2;
  double eta;    // -(N-4) alpha / (2(N-2))
};

RellichSobolevConstants rellich_sobolev_constants(int N, double alpha);

// With u = |x|^eta v: int |x|^{N alpha/(N-2)} |u|^{2N/(N-4)} = int |v|^{2N/(N-4)}.
// Returns the relative defect. Radial v, 2-N < alpha < 0.
double check_power_substitution(const RadialProfile& v, int N, double alpha,
                          double tol = kDefaultTol);

struct RellichSobolevResult {
  double lhs;  // int |Lap v|^2 - C1 int |grad v|^2/|x|^2 + C2 int v^2/|x|^4
  double rhs;  // (1 - mu/(N-4))^{4-4/N} S_0 (int |v|^{2N/(N-4)})^{(N-4)/N}
  bool pass;   // lhs >= rhs (1 - 1e-8)
};

RellichSobolevResult check_rellich_sobolev(const RadialProfile& v, int N, double mu, double tol = kDefaultTol);

// A |x|^{-mu/2} (nu + |x|^{2(1-mu/(N-4))})^{-(N-4)/2}, the equality case of check_rellich_sobolev.
RadialProfile rellich_sobolev_extremal(int N, double mu, double A = 1.0, double nu = 1.0);

struct UpperLineEqualityResult {
  double quotient;  // quotient_radial of the extremal at beta = N alpha/(N-2)
  double constant;  // (1 + alpha/(N-2))^{4-4/N} S_0(N)
  double defect;
};

UpperLineEqualityResult check_upper_line_equality(int N, double alpha, double tol = kDefaultTol);

}  // namespace ckn
