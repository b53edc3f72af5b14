#include "ckn/verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "ckn/identities.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/spectral.hpp"
#include "ckn/variation.hpp"

namespace ckn {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Accumulates the worst value of a defect together with where it occurred.
class Tracker {
 public:
  explicit Tracker(double limit) : limit_(limit) {}

  void defect(double v, const std::string& where) {
    if (std::isnan(worst_)) return;
    if (std::isnan(v) || v > worst_) {
      worst_ = v;
      where_ = where;
    }
  }
  void require(bool ok, const std::string& where) {
    if (!ok && failure_.empty()) failure_ = where;
  }
  bool pass() const { return failure_.empty() && !std::isnan(worst_) && worst_ <= limit_; }
  std::string detail() const {
    std::ostringstream os;
    if (!failure_.empty()) os << "failed: " << failure_ << "; ";
    os << "worst " << worst_ << " (limit " << limit_ << ")";
    if (!where_.empty()) os << " at " << where_;
    return os.str();
  }

 private:
  double limit_;
  double worst_ = 0.0;
  std::string where_;
  std::string failure_;
};

std::string at(int N, double a, double b) {
  std::ostringstream os;
  os << "(" << N << ", " << a << ", " << b << ")";
  return os.str();
}

struct Check {
  std::string name;
  std::function<Tracker()> run;
};

std::vector<Check> build_checks(const VerifyOptions& o) {
  const double ref = 1.0 + o.perturb;
  std::vector<Check> c;

  c.push_back({"closed-form S_r(N,0,0) = S_0(N)", [=] {
    Tracker t(1e-12);
    for (int N = 5; N <= (o.full ? 16 : 10); ++N) {
      t.defect(rel(s_r_closed(Params::validate(N, 0, 0)), ref * s_0_closed(N)), "N=" + std::to_string(N));
    }
    return t;
  }});

  c.push_back({"radial extremal attains S_r", [=] {
    Tracker t(1e-6);
    for (auto [N, a, b] : region_sample_points()) {
      const Params p = Params::validate(N, a, b);
      t.defect(rel(quotient_radial(extremal(p), p), ref * s_r_closed(p)), at(N, a, b));
      if (o.full) {
        t.defect(rel(quotient_radial(extremal(p, 3.7), p), ref * s_r_closed(p)), at(N, a, b) + " lambda=3.7");
      }
    }
    return t;
  }});

  c.push_back({"Euler-Lagrange residual of the extremal", [=] {
    Tracker t(1e-8);
    for (auto [N, a, b] : region_sample_points()) {
      const Params p = Params::validate(N, a, b);
      t.defect(euler_lagrange_residual(extremal(p).scaled(ref), p), at(N, a, b));
    }
    return t;
  }});

  c.push_back({"Emden-Fowler ground state", [=] {
    Tracker t(1e-6);
    for (double M : {4.5, 5.0, 6.0, 8.0}) {
      const JetFn phi = autonomous_ground_state(M);
      const JetFn scaled = [phi, ref](const Jet& x) { return ref * phi(x); };
      const double step = o.full ? 0.05 : 0.25;
      for (double s = -3.0; s <= 3.0 + 1e-12; s += step) {
        t.defect(autonomous_residual(scaled, M, s), "M=" + std::to_string(M));
      }
    }
    for (auto [N, a, b] : region_sample_points()) {
      const Params p = Params::validate(N, a, b);
      const EmdenFowler ef = emden_fowler(extremal(p), p);
      for (double s : {-2.0, 0.0, 1.5}) t.defect(ef.residual(s), at(N, a, b));
    }
    return t;
  }});

  c.push_back({"threshold curve: closed form, first-order map, spectral bisection", [=] {
    Tracker t(1e-4);
    std::vector<std::pair<int, double>> pts = {{5, 1.0}, {6, 2.0}};
    if (o.full) pts = {{5, 0.5}, {5, 1.0}, {5, 2.0}, {6, 0.5}, {6, 1.0}, {6, 2.0}};
    for (auto [N, a] : pts) {
      const double bfs = ref * beta_fs(N, a);
      const std::string w = "N=" + std::to_string(N) + " alpha=" + std::to_string(a);
      t.require(std::abs(fs_correspondence(N, a).beta_mapped - bfs) < 1e-10, "first-order map " + w);
      t.defect(std::abs(fs_locate(N, a) - bfs), w);
    }
    return t;
  }});

  c.push_back({"second variation: sign law, Beta reduction, value", [=] {
    Tracker t(1e-9);
    const SecondVariation s = second_variation(Params::validate(5, 1, 1));
    t.require(rel(s.value, ref * -5.8586824854314582) < 1e-10, "value at (5,1,1)");
    const std::vector<double> alphas =
        o.full ? std::vector<double>{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0} : std::vector<double>{0.5, 1.0, 2.0};
    for (int N : {5, 6, 7}) {
      for (double a : alphas) {
        for (double off : {-0.3, -0.1, -0.01, 0.01, 0.1, 0.3}) {
          const double b = beta_fs(N, a) + off;
          if (!param_violations(N, a, b).empty()) continue;
          const Params p = Params::validate(N, a, b);
          const Derived d = derive(p);
          const SecondVariation sv = second_variation(p);
          const double law = d.q * d.q * (N - 1) - (d.M - 1);
          t.require((sv.value < 0) == (law < 0) && (sv.direct_value < 0) == (law < 0), "sign " + at(N, a, b));
          t.defect(rel(sv.I1, sv.I1_quadrature), "I1 " + at(N, a, b));
          t.defect(rel(sv.I2, sv.I2_quadrature), "I2 " + at(N, a, b));
        }
      }
    }
    return t;
  }});

  c.push_back({"symmetry-breaking certificates", [=] {
    Tracker t(0.0);
    std::vector<std::tuple<int, double, double>> pts = {{5, 1, 1}, {5, 1, 0.3}, {5, 1, beta_fs(5, 1)}};
    if (o.full) {
      pts.insert(pts.end(), {{6, 2, 2.5}, {7, -1.5, -2.5}, {6, 0, 0}, {8, 3, beta_fs(8, 3)},
                             {5, 1, 5.0 / 3}, {6, 0.5, beta_fs(6, 0.5) + 1e-3}});
    }
    for (auto [N, a, b] : pts) {
      const BreakingCertificate cert = certify(Params::validate(N, a, b));
      t.require(cert.consistent(), at(N, a, b) + " " + cert.discrepancy);
      if (cert.verdict == Verdict::Breaking) {
        t.require(cert.second_variation < 0 && cert.directional_quotient < ref * cert.s_r &&
                      cert.ritz_rho1 < 0,
                  "witness signs " + at(N, a, b));
      }
    }
    return t;
  }});

  c.push_back({"linearized kernel at the threshold", [=] {
    Tracker t(1e-8);
    std::vector<std::pair<int, double>> pts = {{5, 1.0}};
    if (o.full) pts = {{5, 0.5}, {5, 1.0}, {6, 2.0}, {7, 1.0}};
    for (auto [N, a] : pts) {
      const double bfs = ref * beta_fs(N, a);
      const Params p = Params::validate(N, a, bfs);
      const ModeForm f = mode_quadratic_form(kernel_x1(p), 1, p);
      const std::string w = "N=" + std::to_string(N) + " alpha=" + std::to_string(a);
      t.defect(std::abs(f.value) / f.kinetic, w);
      t.require(ritz_min_eig(2, p).min_eigenvalue > 0, "rho2 > 0 " + w);
      t.require(ritz_min_eig(1, Params::validate(N, a, bfs - 0.05)).min_eigenvalue > 0, "rho1 below " + w);
      t.require(ritz_min_eig(1, Params::validate(N, a, bfs + 0.05)).min_eigenvalue < 0, "rho1 above " + w);
    }
    return t;
  }});

  c.push_back({"integral identities over the test battery", [=] {
    Tracker t(1e-8);
    std::vector<std::tuple<int, double, double>> pts = {
        {5, 1.0, 1.0}, {5, 0.5, 0.2}, {6, -1.0, -1.6}, {7, 2.0, 1.5}, {8, -0.5, -1.0}};
    if (o.full) pts.insert(pts.end(), {{6, 0.0, -0.5}, {9, -1.0, -2.0}, {5, -1.5, -2.5}});
    for (const auto& u : test_battery()) {
      for (auto [N, a, b] : pts) {
        const Params p = Params::validate(N, a, b);
        const std::string w = u.name + " " + at(N, a, b);
        const LaplacianBoundResult l = check_laplacian_bound(u, p);
        t.require(l.ratio <= l.bound / ref + 1e-10, "lemma bound " + w);
        if (a == 0.0) t.require(l.ratio == 1.0, "unit ratio at alpha = 0 " + w);
        if (u.mode_k == 0) t.defect(check_energy_identity(u.radial_part, p), "energy identity " + w);
        t.defect(check_expansion(u, p), "expansion " + w);
      }
      for (int N : {5, 6, 8}) t.defect(check_pohozaev_identity(u, N), "Pohozaev identity " + u.name);
      if (u.mode_k == 0 && u.radial_part.origin_exponent() == 0.0) {
        for (auto [N, a] : {std::pair{5, -1.0}, {7, -2.5}}) {
          t.defect(check_power_substitution(u.radial_part, N, a), "power substitution " + u.name);
        }
      }
    }
    t.defect(rel(rellich_sobolev_constants(5, -1).c_mu1, ref * 65.0 / 18), "C_mu1 at N=5, alpha=-1");
    return t;
  }});

  c.push_back({"weighted Rellich-Sobolev equality case", [=] {
    Tracker t(1e-6);
    std::vector<std::tuple<int, double>> cases = {{5, -1.0}, {6, -0.5}, {8, -2.0}};
    if (o.full) cases.insert(cases.end(), {{5, -0.5}, {6, -1.0}, {6, -2.0}, {8, -0.5}, {8, -1.0}, {10, -3.0}});
    for (auto [N, a] : cases) {
      const UpperLineEqualityResult r = check_upper_line_equality(N, a);
      const std::string w = "N=" + std::to_string(N) + " alpha=" + std::to_string(a);
      t.defect(rel(r.quotient, ref * r.constant), w);
      t.defect(rel(r.constant, ref * s_r_closed(Params::validate(N, a, N * a / (N - 2.0)))), "constant " + w);
      const double mu = rellich_sobolev_constants(N, a).mu;
      for (double nu : {1.0, 3.0}) {
        const RellichSobolevResult rs = check_rellich_sobolev(rellich_sobolev_extremal(N, mu, 1.0, nu), N, mu);
        t.defect(rel(rs.lhs, ref * rs.rhs), "family " + w);
      }
      const RellichSobolevResult off = check_rellich_sobolev(test_battery()[1].radial_part, N, mu);
      t.require(off.lhs > ref * off.rhs, "strict inequality " + w);
    }
    return t;
  }});

  return c;
}

}  // namespace

std::vector<std::tuple<int, double, double>> region_sample_points() {
  return {
      {5, 0.0, 0.0},               // Classical
      {7, 0.0, 0.0},               // Classical
      {5, 1.0, 1.0},               // SymmetryBreaking
      {6, 2.0, 2.5},               // SymmetryBreaking
      {5, 1.0, 0.3},               // ConjecturedSymmetry
      {7, -1.5, -2.5},             // ConjecturedSymmetry
      {8, 3.0, beta_fs(8, 3.0)},   // on the threshold curve
      {5, 0.5, -1.2},              // near the lower boundary
      {5, 1.0, 5.0 / 3.0},         // NotAttainedBoundary
      {6, -1.0, -1.5},             // ProvenSymmetryBoundary
  };
}

std::vector<CheckOutcome> run_verify_all(const VerifyOptions& opts,
                                         const std::function<void(const CheckOutcome&)>& report) {
  std::vector<CheckOutcome> out;
  for (const Check& c : build_checks(opts)) {
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome r{c.name, false, "", 0.0};
    try {
      const Tracker t = c.run();
      r.pass = t.pass();
      r.detail = t.detail();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ckn
