#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <vector>

namespace ckn {

struct VerifyOptions {
  bool full = false;
  // Relative perturbation applied to every closed-form reference value. Any
  // nonzero value of order 1e-6 or more must make the suite fail.
  double perturb = 0.0;
};

struct CheckOutcome {
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

// Ten admissible (N, alpha, beta) points covering every attainable region class.
std::vector<std::tuple<int, double, double>> region_sample_points();

// Runs the invariant battery; `report`, if set, is called after each check.
std::vector<CheckOutcome> run_verify_all(
    const VerifyOptions& opts, const std::function<void(const CheckOutcome&)>& report = {});

}  // namespace ckn
