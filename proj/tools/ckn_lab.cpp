#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ckn/errors.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/scan.hpp"
#include "ckn/spectral.hpp"
#include "ckn/variation.hpp"
#include "ckn/verify.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kIo = 3 };

struct Options {
  std::optional<int> N;
  std::optional<double> alpha;
  std::optional<double> beta;
  double eps = 1e-2;
  std::optional<double> tol;
  int jobs = 0;
  bool json = false;
  std::string out;
  std::string alpha_range;
  std::string beta_range = "auto";
  std::string level = "fast";
  double perturb = 0.0;
  bool timing = false;
  int node_cap = 0;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ckn::Params require_params(const Options& o) {
  std::vector<std::string> missing;
  if (!o.N) missing.push_back("--N is required");
  if (!o.alpha) missing.push_back("--alpha is required");
  if (!o.beta) missing.push_back("--beta is required");
  if (!missing.empty()) throw ckn::ParamError(missing);
  return ckn::Params::validate(*o.N, *o.alpha, *o.beta);
}

// Writes to --out if given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
    path_ = path;
  }
  std::ostream& os() { return path_.empty() ? std::cout : file_; }
  void close() {
    if (path_.empty()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw IoError("error writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

// Emits one record: a single JSON line, or aligned "key value" lines.
void emit(std::ostream& os, const ordered_json& rec, bool json) {
  if (json) {
    os << rec.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : rec.items()) {
    std::string s;
    if (v.is_number_float()) {
      s = ckn::format_number(v.get<double>());
    } else if (v.is_string()) {
      s = v.get<std::string>();
    } else {
      s = v.dump();
    }
    char key[40];
    std::snprintf(key, sizeof key, "%-24s", k.c_str());
    os << key << ' ' << s << '\n';
  }
}

ordered_json params_json(const ckn::Params& p) {
  return {{"N", p.N()}, {"alpha", p.alpha()}, {"beta", p.beta()}};
}

int cmd_constants(const Options& o) {
  const ckn::Params p = require_params(o);
  const ckn::Derived d = ckn::derive(p);
  const auto hardy = ckn::hardy_lemma_constants(p);
  const double a = 0.5 * (p.beta() - 2.0 * p.alpha());
  const auto rell = ckn::rellich_infimum(p.N(), a);
  ordered_json rec = params_json(p);
  rec["class"] = ckn::to_string(ckn::classify(p.N(), p.alpha(), p.beta()));
  rec["p_star"] = d.p_star;
  rec["q"] = d.q;
  rec["M"] = d.M;
  rec["omega"] = d.omega;
  rec["amplitude_constant"] = ckn::amplitude_constant(p);
  rec["s_r"] = ckn::s_r_closed(p);
  rec["s_0"] = ckn::s_0_closed(p.N());
  rec["beta_fs"] = ckn::beta_fs(p.N(), p.alpha());
  rec["hardy_E"] = hardy.E;
  rec["lemma_C"] = hardy.C;
  rec["rellich_a"] = a;
  rec["rellich_infimum"] = rell.value;
  rec["rellich_argmin_k"] = rell.argmin_k;
  Sink sink(o.out);
  emit(sink.os(), rec, o.json);
  sink.close();
  return kOk;
}

int cmd_certify(const Options& o) {
  const ckn::Params p = require_params(o);
  if (!(std::abs(o.eps) < 0.25 && o.eps != 0.0)) {
    throw ckn::ParamError({"--eps must satisfy 0 < |eps| < 0.25"});
  }
  const double tol = o.tol.value_or(1e-6);
  if (!(tol >= 0.0)) throw ckn::ParamError({"--tol must be non-negative"});
  const ckn::BreakingCertificate c = ckn::certify(p, o.eps, tol);
  ordered_json rec = params_json(p);
  rec["class"] = ckn::to_string(ckn::classify(p.N(), p.alpha(), p.beta()));
  rec["eps"] = c.eps;
  rec["tol"] = tol;
  rec["s_r"] = c.s_r;
  rec["second_variation"] = c.second_variation;
  rec["directional_quotient"] = c.directional_quotient;
  rec["ritz_rho1"] = c.ritz_rho1;
  rec["variation_witness"] = c.variation_witness;
  rec["quotient_witness"] = c.quotient_witness;
  rec["spectral_witness"] = c.spectral_witness;
  rec["verdict"] = ckn::to_string(c.verdict);
  rec["expected"] = ckn::to_string(c.expected);
  rec["witnesses_agree"] = c.witnesses_agree;
  rec["discrepancy"] = c.discrepancy;
  Sink sink(o.out);
  emit(sink.os(), rec, o.json);
  sink.close();
  if (!c.consistent()) std::cerr << "certify: " << c.discrepancy << '\n';
  return c.consistent() ? kOk : kVerifyFailed;
}

int cmd_fs_curve(const Options& o) {
  if (!o.N) throw ckn::ParamError({"--N is required"});
  const ckn::GridRange ar = ckn::parse_range(o.alpha_range.empty() ? "0.25:3:12" : o.alpha_range);
  const double tol = o.tol.value_or(1e-4);
  if (!(tol > 0.0)) throw ckn::ParamError({"--tol must be positive"});
  for (double a : ar.points()) {
    if (!(a > 0.0)) throw ckn::ParamError({"fs-curve needs alpha > 0"});
    const auto v = ckn::param_violations(*o.N, a, ckn::beta_fs(*o.N, a));
    if (!v.empty()) throw ckn::ParamError(v);
  }
  Sink sink(o.out);
  if (!o.json) sink.os() << "N,alpha,beta_fs,beta_fs_first_order,beta_fs_spectral,spectral_error\n";
  bool ok = true;
  for (double a : ar.points()) {
    const double closed = ckn::beta_fs(*o.N, a);
    const double mapped = ckn::fs_correspondence(*o.N, a).beta_mapped;
    const double located = ckn::fs_locate(*o.N, a, tol);
    ok = ok && std::abs(located - closed) <= tol && std::abs(mapped - closed) <= 1e-10;
    if (o.json) {
      ordered_json rec = {{"N", *o.N},
                          {"alpha", a},
                          {"beta_fs", closed},
                          {"beta_fs_first_order", mapped},
                          {"beta_fs_spectral", located},
                          {"spectral_error", std::abs(located - closed)}};
      sink.os() << rec.dump() << '\n';
    } else {
      sink.os() << *o.N << ',' << ckn::format_number(a) << ',' << ckn::format_number(closed) << ','
                << ckn::format_number(mapped) << ',' << ckn::format_number(located) << ','
                << ckn::format_number(std::abs(located - closed)) << '\n';
    }
  }
  sink.close();
  return ok ? kOk : kVerifyFailed;
}

int cmd_scan(const Options& o) {
  if (!o.N) throw ckn::ParamError({"--N is required"});
  if (*o.N < 5) throw ckn::ParamError({"N must be >= 5"});
  ckn::ScanSpec spec;
  spec.N = *o.N;
  if (!o.alpha_range.empty()) {
    spec.alpha = ckn::parse_range(o.alpha_range);
  } else if (o.alpha) {
    spec.alpha = {*o.alpha, *o.alpha, 1};
  } else {
    throw ckn::ParamError({"--alpha-range (or --alpha) is required"});
  }
  if (o.beta_range.rfind("auto", 0) == 0) {
    if (o.beta_range.size() > 4) {
      if (o.beta_range[4] != ':') throw ckn::ParamError({"beta range must be auto or auto:steps"});
      spec.beta_auto_steps = std::stoi(o.beta_range.substr(5));
      if (spec.beta_auto_steps < 1) throw ckn::ParamError({"auto beta steps must be >= 1"});
    }
    if (o.beta && o.beta_range == "auto") spec.beta = ckn::GridRange{*o.beta, *o.beta, 1};
  } else {
    spec.beta = ckn::parse_range(o.beta_range);
  }
  spec.timing = o.timing;
  spec.jobs = ckn::resolve_jobs(o.jobs);
  Sink sink(o.out);  // fail on an unwritable path before computing
  const auto rows = ckn::run_scan(spec);
  if (o.json) {
    for (const auto& r : rows) {
      ordered_json rec = {{"N", r.N}, {"alpha", r.alpha}, {"beta", r.beta},
                          {"class", ckn::to_string(r.region)}};
      auto put = [&](const char* k, const std::optional<double>& v) {
        rec[k] = v ? ordered_json(*v) : ordered_json(nullptr);
      };
      put("beta_fs", r.beta_fs);
      put("s_r", r.s_r);
      put("second_variation", r.second_variation);
      put("rho1", r.rho1);
      put("wall_time_ms", r.wall_time_ms);
      sink.os() << rec.dump() << '\n';
    }
  } else {
    ckn::write_csv(sink.os(), rows);
  }
  sink.close();
  return kOk;
}

int cmd_verify_all(const Options& o) {
  if (o.level != "fast" && o.level != "full") throw ckn::ParamError({"--level must be fast or full"});
  ckn::VerifyOptions vo;
  vo.full = o.level == "full";
  vo.perturb = o.perturb;
  Sink sink(o.out);
  const auto results = ckn::run_verify_all(vo, [&](const ckn::CheckOutcome& r) {
    if (o.json) {
      sink.os() << ordered_json{{"check", r.name}, {"pass", r.pass}, {"detail", r.detail},
                                {"seconds", r.seconds}}.dump()
                << '\n';
    } else {
      char t[32];
      std::snprintf(t, sizeof t, "%.2fs", r.seconds);
      sink.os() << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << r.detail << ", " << t << "]\n";
    }
    sink.os().flush();
  });
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  if (!o.json) sink.os() << (failed ? std::to_string(failed) + " check(s) failed" : "all checks passed") << '\n';
  sink.close();
  if (failed) {
    for (const auto& r : results) {
      if (!r.pass) std::cerr << "failed: " << r.name << '\n';
    }
  }
  return failed ? kVerifyFailed : kOk;
}

int cmd_transform_check(const Options& o) {
  const ckn::Params p = require_params(o);
  const double tol = o.tol.value_or(1e-6);
  const ckn::EmdenFowler ef = ckn::emden_fowler(ckn::extremal(p), p);
  const ckn::JetFn star = ckn::autonomous_ground_state(ef.M);
  double worst_profile = 0.0, worst_ground = 0.0, worst_match = 0.0;
  for (int i = -24; i <= 24; ++i) {
    const double t = 0.25 * i;
    worst_profile = std::max(worst_profile, ef.residual(t));
    worst_ground = std::max(worst_ground, ckn::autonomous_residual(star, ef.M, t));
    const double g = star(ckn::Jet::variable(t)).value();
    worst_match = std::max(worst_match, std::abs(ef(t) - g) / std::abs(g));
  }
  const bool ok = worst_profile < tol && worst_ground < tol && worst_match < tol;
  ordered_json rec = params_json(p);
  rec["M"] = ef.M;
  rec["max_residual_transformed_extremal"] = worst_profile;
  rec["max_residual_ground_state"] = worst_ground;
  rec["max_relative_gap_to_ground_state"] = worst_match;
  rec["tol"] = tol;
  rec["pass"] = ok;
  Sink sink(o.out);
  emit(sink.os(), rec, o.json);
  sink.close();
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the second-order Caffarelli-Kohn-Nirenberg inequality"};
  app.fallthrough();
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value file supplying defaults for any flag");
  Options o;
  app.add_option("--N", o.N, "dimension (>= 5)");
  app.add_option("--alpha", o.alpha, "weight exponent alpha");
  app.add_option("--beta", o.beta, "weight exponent beta");
  app.add_option("--eps", o.eps, "perturbation size for the directional quotient")->capture_default_str();
  app.add_option("--tol", o.tol, "certify: witness sign tolerance (1e-6); fs-curve: bisection width (1e-4); transform-check: residual bound (1e-6)");
  app.add_option("--jobs", o.jobs, "worker threads for scan (default: CKN_LAB_THREADS or all cores)");
  app.add_flag("--json", o.json, "emit JSON lines");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--alpha-range", o.alpha_range, "lo:hi:steps or a single value");
  app.add_option("--beta-range", o.beta_range, "lo:hi:steps, a single value, auto or auto:steps")->capture_default_str();
  app.add_option("--level", o.level, "verify-all level: fast or full")->capture_default_str();
  app.add_option("--perturb", o.perturb, "verify-all: relative perturbation of reference constants (harness self-test)")
      ->group("");
  app.add_flag("--timing", o.timing, "fill wall_time_ms in scan output");
  app.add_option("--node-cap", o.node_cap, "quadrature node cap per integral");

  auto* constants = app.add_subcommand("constants", "closed-form constants at one point");
  auto* certify = app.add_subcommand("certify", "three-witness symmetry-breaking certificate");
  auto* fs_curve = app.add_subcommand("fs-curve", "threshold curve by three independent routes");
  auto* scan = app.add_subcommand("scan", "region scan over an (alpha, beta) grid, CSV or JSON lines");
  auto* verify = app.add_subcommand("verify-all", "run the invariant battery");
  auto* transform = app.add_subcommand("transform-check", "Emden-Fowler residuals of the extremal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << e.what() << '\n';
    return kIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (o.node_cap != 0) {
      if (o.node_cap < 64) throw ckn::ParamError({"--node-cap must be at least 64"});
      ckn::set_node_cap(o.node_cap);
    }
    if (*constants) return cmd_constants(o);
    if (*certify) return cmd_certify(o);
    if (*fs_curve) return cmd_fs_curve(o);
    if (*scan) return cmd_scan(o);
    if (*verify) return cmd_verify_all(o);
    if (*transform) return cmd_transform_check(o);
  } catch (const ckn::ParamError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const ckn::DomainError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInvalid;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kVerifyFailed;
  }
  return kInvalid;
}
