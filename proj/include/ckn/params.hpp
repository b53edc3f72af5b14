#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ckn {

// Absolute tolerance for deciding that (alpha, beta) sits on a boundary curve.
inline constexpr double kBoundaryTol = 1e-12;

// Admissible parameter triple: N >= 5, alpha > 2 - N and
// alpha - 2 < beta <= N alpha / (N - 2). Only obtainable through validate().
class Params {
 public:
  static Params validate(int N, double alpha, double beta);

  int N() const noexcept { return N_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  // 2 + beta - alpha, the exponent of |x| inside the extremal profile.
  double width() const noexcept { return 2.0 + beta_ - alpha_; }
  // N - 4 + 2 alpha - beta, the scaling weight of the extremal profile.
  double homogeneity() const noexcept { return N_ - 4.0 + 2.0 * alpha_ - beta_; }

 private:
  Params(int N, double alpha, double beta) : N_(N), alpha_(alpha), beta_(beta) {}

  int N_;
  double alpha_;
  double beta_;
};

// Human-readable list of violated admissibility conditions; empty when valid.
std::vector<std::string> param_violations(int N, double alpha, double beta);

struct Derived {
  double p_star;  // critical exponent 2(N+beta)/(N-4+2alpha-beta)
  double q;       // radial change of variable r = s^q
  double M;       // effective (possibly fractional) dimension
  double omega;   // area of the unit sphere S^{N-1}
};

Derived derive(const Params& p);

// Surface area of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Symmetry-breaking threshold in the (alpha, beta) plane.
double beta_fs(int N, double alpha);

// Threshold curve of the first-order (p = 2) inequality, defined for a < (N-2)/2.
double bfs_first_order(int N, double a);

struct FsCorrespondence {
  double a;
  double b;
  double tau;
  double beta_mapped;
};

// Maps the first-order threshold onto the second-order one via alpha = -2a,
// beta = -b tau.
FsCorrespondence fs_correspondence(int N, double alpha);

enum class RegionClass {
  Invalid,
  Classical,
  SymmetryBreaking,
  ConjecturedSymmetry,
  ProvenSymmetryBoundary,
  NotAttainedBoundary,
  RellichDegenerate,
};

std::string_view to_string(RegionClass c);

// Total classification of the (alpha, beta) plane for fixed N. The threshold
// curve itself belongs to ConjecturedSymmetry; the upper line beta = N alpha/(N-2)
// is split into its own classes.
//
// ConjecturedSymmetry records an open conjecture, not a theorem.
RegionClass classify(int N, double alpha, double beta);

struct HardyLemmaConstants {
  double E;  // sharp weighted Hardy constant
  double C;  // constant bounding the weighted |Laplacian| norm
};

HardyLemmaConstants hardy_lemma_constants(const Params& p);

struct RellichInfimum {
  double value;
  int argmin_k;
};

// min over integers k >= 0 of (k + N/2 + a)^2 (k + (N-4)/2 - a)^2.
RellichInfimum rellich_infimum(int N, double a);

}  // namespace ckn
