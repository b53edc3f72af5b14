#include "ckn/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ckn/errors.hpp"
#include "ckn/specfun.hpp"

namespace ckn {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double beta_upper(int N, double alpha) { return N * alpha / (N - 2.0); }

bool near(double a, double b) { return std::abs(a - b) <= kBoundaryTol; }

}  // namespace

ParamError::ParamError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid parameters:";
        for (const auto& v : violations) msg += " " + v + ";";
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<std::string> param_violations(int N, double alpha, double beta) {
  std::vector<std::string> out;
  if (N < 5) out.push_back("dimension too small: N = " + std::to_string(N) + " < 5");
  if (!std::isfinite(alpha) || !(alpha > 2.0 - N)) {
    out.push_back("alpha out of range: need alpha > 2 - N, got alpha = " + fmt(alpha));
  }
  if (!std::isfinite(beta)) {
    out.push_back("beta out of range: beta is not finite");
  } else if (std::isfinite(alpha)) {
    if (!(beta - (alpha - 2.0) > kBoundaryTol)) {
      out.push_back("beta out of range: need beta > alpha - 2 = " + fmt(alpha - 2.0) +
                    ", got beta = " + fmt(beta));
    }
    if (N > 2 && beta - beta_upper(N, alpha) > kBoundaryTol) {
      out.push_back("beta out of range: need beta <= N alpha/(N-2) = " +
                    fmt(beta_upper(N, alpha)) + ", got beta = " + fmt(beta));
    }
  }
  return out;
}

Params Params::validate(int N, double alpha, double beta) {
  auto violations = param_violations(N, alpha, beta);
  if (!violations.empty()) throw ParamError(std::move(violations));
  return Params(N, alpha, beta);
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: dimension must be >= 1");
  return 2.0 * std::exp(0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n));
}

Derived derive(const Params& p) {
  const double N = p.N();
  const double d = p.width();
  Derived out{};
  out.q = 2.0 / d;
  out.M = 2.0 * (N + p.beta()) / d;
  out.p_star = 2.0 * (N + p.beta()) / p.homogeneity();
  out.omega = sphere_area(p.N());
  return out;
}

double beta_fs(int N, double alpha) {
  const double radicand = double(N) * N + alpha * alpha + 2.0 * (N - 2.0) * alpha;
  if (!(radicand >= 0.0)) {
    throw DomainError("beta_fs: negative radicand " + fmt(radicand) + " at alpha = " + fmt(alpha));
  }
  return std::sqrt(radicand) - N;
}

double bfs_first_order(int N, double a) {
  const double ac = (N - 2.0) / 2.0;
  if (!(a < ac)) {
    throw DomainError("bfs_first_order: need a < a_c = " + fmt(ac) + ", got a = " + fmt(a));
  }
  const double gap = ac - a;
  return N * gap / (2.0 * std::sqrt(gap * gap + N - 1.0)) + a - ac;
}

FsCorrespondence fs_correspondence(int N, double alpha) {
  if (!(alpha > 0.0)) {
    throw DomainError("fs_correspondence: need alpha > 0, got " + fmt(alpha));
  }
  FsCorrespondence c{};
  c.a = -alpha / 2.0;
  c.b = bfs_first_order(N, c.a);
  c.tau = 2.0 * N / (N - 2.0 * (1.0 + c.a - c.b));
  c.beta_mapped = -c.b * c.tau;
  return c;
}

std::string_view to_string(RegionClass c) {
  switch (c) {
    case RegionClass::Invalid: return "Invalid";
    case RegionClass::Classical: return "Classical";
    case RegionClass::SymmetryBreaking: return "SymmetryBreaking";
    case RegionClass::ConjecturedSymmetry: return "ConjecturedSymmetry";
    case RegionClass::ProvenSymmetryBoundary: return "ProvenSymmetryBoundary";
    case RegionClass::NotAttainedBoundary: return "NotAttainedBoundary";
    case RegionClass::RellichDegenerate: return "RellichDegenerate";
  }
  return "Invalid";
}

RegionClass classify(int N, double alpha, double beta) {
  if (N < 5 || !std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 2.0 - N)) {
    return RegionClass::Invalid;
  }
  // beta = alpha - 2 is excluded by validate() but has its own (Rellich) tag.
  if (near(beta, alpha - 2.0)) return RegionClass::RellichDegenerate;
  if (!param_violations(N, alpha, beta).empty()) return RegionClass::Invalid;
  if (near(alpha, 0.0) && near(beta, 0.0)) return RegionClass::Classical;

  const double upper = beta_upper(N, alpha);
  if (near(beta, upper)) {
    if (alpha > 0.0) return RegionClass::NotAttainedBoundary;
    if (alpha < 0.0) return RegionClass::ProvenSymmetryBoundary;
  }
  if (alpha > 0.0) {
    const double fs = beta_fs(N, alpha);
    if (beta > fs + kBoundaryTol && beta < upper - kBoundaryTol) {
      return RegionClass::SymmetryBreaking;
    }
  }
  return RegionClass::ConjecturedSymmetry;
}

HardyLemmaConstants hardy_lemma_constants(const Params& p) {
  const double a = std::abs(p.alpha());
  const double E = std::pow(2.0 / p.homogeneity(), 2);
  return {E, 1.0 + a + E * (a + p.alpha() * p.alpha())};
}

RellichInfimum rellich_infimum(int N, double a) {
  auto f = [&](double k) {
    const double u = k + N / 2.0 + a;
    const double v = k + (N - 4.0) / 2.0 - a;
    return u * u * v * v;
  };
  // f = g^2 with g an upward quadratic whose roots are -N/2 - a and a - (N-4)/2;
  // beyond the larger root (and k >= 0) g is positive and increasing.
  const double larger_root = std::max({0.0, -N / 2.0 - a, a - (N - 4.0) / 2.0});
  const int last = static_cast<int>(std::ceil(larger_root)) + 2;
  RellichInfimum best{f(0.0), 0};
  for (int k = 1; k <= last; ++k) {
    const double v = f(k);
    if (v < best.value) best = {v, k};
  }
  return best;
}

}  // namespace ckn
