#pragma once

#include <vector>

#include "ckn/params.hpp"
#include "ckn/radial_profile.hpp"

namespace ckn {

// [h (N-2+alpha)(N+beta)(N+2-alpha+2beta)]^{h/(4d)}, h = N-4+2alpha-beta,
// d = 2+beta-alpha.
double amplitude_constant(const Params& p);

// U_lambda(r) = lambda^{h/2} C (1 + (lambda r)^d)^{-h/d}, with analytic derivatives.
RadialProfile extremal(const Params& p, double lambda = 1.0);

// (M-4)(M-2)M(M+2) [Gamma(M/2)^2 / (2 Gamma(M))]^{4/M}, M > 4.
double b_closed(double M);

// Radial sharp constant q^{4/M-4} omega^{4/M} B(M).
double s_r_closed(const Params& p);

// Sharp constant of the unweighted second-order Sobolev inequality.
double s_0_closed(int N);

// r -> r^alpha (u'' + (N-1+alpha) u'/r) = div(|x|^alpha grad u) for radial u.
// The result has two fewer derivatives available than u.
RadialProfile weighted_laplacian(const RadialProfile& u, double alpha, int N);

// r -> r^e u(r).
RadialProfile times_power(const RadialProfile& u, double e);

// 25 geometric points from 1e-2 to 1e2.
std::vector<double> default_residual_samples();

// Max over samples of |L - R| / (|L| + |R| + 1e-300) for the Euler-Lagrange
// equation div(|x|^a grad(|x|^-b div(|x|^a grad u))) = |x|^b |u|^{p*-2} u.
double euler_lagrange_residual(const RadialProfile& u, const Params& p,
                    const std::vector<double>& samples = default_residual_samples());

// Autonomous form obtained from r = s^q, t = -ln s:
//   phi'''' - ((M-2)^2+4)/2 phi'' + M^2 (M-4)^2/16 phi = |phi|^{8/(M-4)} phi.
struct EmdenFowler {
  JetFn phi;  // jet in t
  double M;

  double operator()(double t) const { return phi(Jet::variable(t)).value(); }
  double residual(double t) const;
};

// phi(t) = q^{(M-4)/2} e^{-(M-4)t/2} u(e^{-qt}).
EmdenFowler emden_fowler(const RadialProfile& u, const Params& p);

// Inverse map: u(r) = q^{-(M-4)/2} r^{-(M-4)/(2q)} phi(-ln(r)/q).
RadialProfile profile_from_emden_fowler(const JetFn& phi, const Params& p);

// Relative residual of the autonomous equation at t, normalized by the sum of
// the magnitudes of its four terms.
double autonomous_residual(const JetFn& phi, double M, double t);

// Closed-form even ground state Gamma_M^{(M-4)/8} (2 cosh t)^{-(M-4)/2}.
JetFn autonomous_ground_state(double M);

enum class KernelKind { Z0, Z1Radial };

// Z0 = (1 - r^d)(1 + r^d)^{-(N-2+alpha)/d}, the scaling direction.
// Z1Radial = r^{d/2}(1 + r^d)^{-(N-2+alpha)/d}, radial factor of the
// mode-1 kernel elements (angular factor x_i/|x|).
RadialProfile kernel_mode(const Params& p, KernelKind which);

}  // namespace ckn
