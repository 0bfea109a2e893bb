#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stgeo/json_io.hpp"

namespace stgeo {

struct CheckReport {
  std::string check;
  int trials = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  uint64_t seed = 0;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckReport> checks;
  bool pass = true;
  double seconds = 0.0;
};

struct VerifyConfig {
  uint64_t seed = 0;
  int trials = 0;    // 0 = per-check default
  double tol = 0.0;  // 0 = per-check default; otherwise overrides every threshold
};

struct GridPoint {
  Algebra algebra;
  int n, k;
};

/// (3,1),(4,2),(5,2),(5,3) over R and C plus (2,1),(3,1) over H.
std::vector<GridPoint> default_grid();

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);
std::vector<SuiteResult> run_all(const VerifyConfig& cfg);

json report_json(const SuiteResult& r);
json report_json(const std::vector<SuiteResult>& rs);

/// Per-trial norms of one tangent under the four metrics, plus the summary
/// the reduced/quasi-geodesic metric equality predicts.
json compare_metrics_json(Algebra algebra, int n, int k, uint64_t seed, int trials);

}  // namespace stgeo
