#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ckn/params.hpp"

namespace ckn {

// Inclusive grid lo, ..., hi with `steps` points. steps == 1 is the single
// point lo and requires lo == hi.
struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  std::vector<double> points() const;
};

// Parses "lo:hi:steps" or a single number (one-point grid). Throws ParamError.
GridRange parse_range(std::string_view text);

struct ScanSpec {
  int N = 5;
  GridRange alpha;
  std::optional<GridRange> beta;  // nullopt: per-alpha automatic strip
  int beta_auto_steps = 20;
  bool timing = false;
  int jobs = 1;
};

// [alpha - 2 + delta, N alpha/(N-2)], delta = 1e-3 times the strip width.
GridRange auto_beta_range(int N, double alpha, int steps);

struct ScanRecord {
  int N;
  double alpha;
  double beta;
  RegionClass region;
  std::optional<double> beta_fs;
  std::optional<double> s_r;
  std::optional<double> second_variation;
  std::optional<double> rho1;
  std::optional<double> wall_time_ms;
};

// Quantities that are undefined at (N, alpha, beta), or whose computation
// fails, are left empty.
ScanRecord scan_point(int N, double alpha, double beta, bool timing = false);

// Grid points in row-major order (alpha outer, beta inner), evaluated by
// `jobs` worker threads. The output order does not depend on jobs.
std::vector<ScanRecord> run_scan(const ScanSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "N,alpha,beta,class,beta_fs,s_r,second_variation,rho1,wall_time_ms";

// "%.17g", so that a value read back is the same double.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<ScanRecord>& rows);

// Worker count: explicit value if positive, else CKN_LAB_THREADS, else the
// hardware concurrency (at least 1).
int resolve_jobs(int requested);

}  // namespace ckn
