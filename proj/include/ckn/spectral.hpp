#pragma once

#include <vector>

#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/radial_profile.hpp"

namespace ckn {

struct ModeData {
  int k;
  double lambda_k;  // k(N-2+k), eigenvalue of the sphere Laplacian
  long long l_k;    // multiplicity
  double varpi_k;   // k(M-2+k)
};

ModeData mode_data(int k, const Params& p);

// (M-4)(M-2)M(M+2).
double gamma_m(double M);

// (p* - 1) Gamma_M = (M+4)(M-2)M(M+2), the potential weight of the linearized problem.
double linearized_weight(double M);

// Functions of s (profiles in y = ln s) spanning the kernel at the threshold:
// X1 = s (1+s^2)^{-(M-2)/2} (mode 1), X0 = (1-s^2)(1+s^2)^{-(M-2)/2} (mode 0).
RadialProfile kernel_x1(const Params& p);
RadialProfile kernel_x0(const Params& p);

struct ModeForm {
  double kinetic;    // int [X'' + (M-1)X'/s - q^2 lambda_k X/s^2]^2 s^{M-1} ds
  double potential;  // (M+4)(M-2)M(M+2) int (1+s^2)^{-4} X^2 s^{M-1} ds
  double value;      // kinetic - potential
};

// Mode-k quadratic form of the linearized operator in the s variable. X is a
// profile in s (jets in y = ln s).
ModeForm mode_quadratic_form(const RadialProfile& X, int k, const Params& p,
                             double tol = kDefaultTol);

struct RitzResult {
  double min_eigenvalue;
  std::vector<double> coefficients;  // in the normalized basis
  int basis_size;
  double gram_condition;
};

// Smallest eigenvalue rho of A c = rho B c, A the mode-k form and B the
// (1+s^2)^{-4} s^{M-1} Gram matrix, on the span of
// s^{k'} (1+s^2)^{-(M-2)/2-m-j}, j < J (k' = 1 for k = 1, k' = k otherwise;
// m = 0 unless k' >= M/2, where it is raised to keep the form finite).
// Throws ConditioningError when cond(B) > 1e12.
RitzResult ritz_min_eig(int k, const Params& p, int J = 16, double tol = kDefaultTol);

// Threshold beta located by bisection on the sign of the mode-1 Ritz value.
double fs_locate(int N, double alpha, double tol = 1e-4, int J = 16);

}  // namespace ckn
