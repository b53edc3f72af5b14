#include "ckn/scan.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

#include "ckn/errors.hpp"
#include "ckn/profiles.hpp"
#include "ckn/spectral.hpp"
#include "ckn/variation.hpp"

namespace ckn {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParamError({"cannot parse " + std::string(what) + " '" + std::string(s) + "'"});
  }
  return v;
}

}  // namespace

std::vector<double> GridRange::points() const {
  if (steps < 1) throw ParamError({"grid needs at least one step"});
  if (steps == 1) {
    if (lo != hi) throw ParamError({"a one-step grid needs lo == hi"});
    return {lo};
  }
  if (!(lo < hi)) throw ParamError({"grid needs lo < hi"});
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
  out.back() = hi;
  return out;
}

GridRange parse_range(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    const double v = parse_double(text, "range");
    return {v, v, 1};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw ParamError({"range must be lo:hi:steps, got '" + std::string(text) + "'"});
  }
  GridRange r;
  r.lo = parse_double(text.substr(0, c1), "range lower end");
  r.hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "range upper end");
  const auto st = text.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(st.data(), st.data() + st.size(), r.steps);
  if (ec != std::errc() || ptr != st.data() + st.size()) {
    throw ParamError({"cannot parse range steps '" + std::string(st) + "'"});
  }
  r.points();  // validates
  return r;
}

GridRange auto_beta_range(int N, double alpha, int steps) {
  const double lo = alpha - 2.0, hi = N * alpha / (N - 2.0);
  const double width = hi - lo;
  if (N < 5 || !(width > 0.0)) {
    throw ParamError({"no admissible beta for N = " + std::to_string(N) +
                      ", alpha = " + format_number(alpha)});
  }
  if (steps == 1) return {hi, hi, 1};
  return {lo + 1e-3 * width, hi, steps};
}

ScanRecord scan_point(int N, double alpha, double beta, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  ScanRecord r{N, alpha, beta, classify(N, alpha, beta), {}, {}, {}, {}, {}};
  if (N >= 5 && std::isfinite(alpha) && alpha > 2.0 - N) r.beta_fs = beta_fs(N, alpha);
  if (param_violations(N, alpha, beta).empty()) {
    const Params p = Params::validate(N, alpha, beta);
    try {
      r.s_r = s_r_closed(p);
    } catch (const std::exception&) {
    }
    try {
      r.second_variation = second_variation(p).value;
    } catch (const std::exception&) {
    }
    try {
      r.rho1 = ritz_min_eig(1, p).min_eigenvalue;
    } catch (const std::exception&) {
    }
  }
  if (timing) {
    r.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::vector<ScanRecord> run_scan(const ScanSpec& spec) {
  struct Point {
    double alpha, beta;
  };
  std::vector<Point> pts;
  for (double a : spec.alpha.points()) {
    const GridRange br = spec.beta ? *spec.beta : auto_beta_range(spec.N, a, spec.beta_auto_steps);
    for (double b : br.points()) pts.push_back({a, b});
  }
  std::vector<std::optional<ScanRecord>> out(pts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < pts.size();) {
      out[i] = scan_point(spec.N, pts[i].alpha, pts[i].beta, spec.timing);
    }
  };
  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(pts.size())));
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  std::vector<ScanRecord> rows;
  rows.reserve(out.size());
  for (auto& r : out) rows.push_back(std::move(*r));
  return rows;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<ScanRecord>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.N << ',' << format_number(r.alpha) << ',' << format_number(r.beta) << ','
       << to_string(r.region) << ',' << opt(r.beta_fs) << ',' << opt(r.s_r) << ','
       << opt(r.second_variation) << ',' << opt(r.rho1) << ',' << opt(r.wall_time_ms) << '\n';
  }
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CKN_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ckn
