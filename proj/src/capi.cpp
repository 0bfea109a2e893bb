#include "stiefel_geo.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "stgeo/curve_eval.hpp"
#include "stgeo/verify.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
stgeo_status wrap(F&& f) {
  try {
    return f();
  } catch (const stgeo::parse_error& e) {
    g_last_error = e.what();
    return STGEO_ERROR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return STGEO_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STGEO_ERROR_INTERNAL;
  }
}

stgeo_status require(bool cond, const char* msg) {
  if (cond) return STGEO_OK;
  g_last_error = msg;
  return STGEO_ERROR_INVALID_ARGUMENT;
}

}  // namespace

struct stgeo_curve {
  stgeo::Curve curve;
};

extern "C" {

const char* stgeo_version(void) { return "0.1.0"; }

const char* stgeo_last_error(void) { return g_last_error.c_str(); }

stgeo_status stgeo_curve_create(const char* spec_json, stgeo_curve** out_curve) {
  if (stgeo_status s = require(spec_json && out_curve, "null argument"); s != STGEO_OK) return s;
  return wrap([&] {
    *out_curve = new stgeo_curve{stgeo::Curve::from_json_text(spec_json)};
    return STGEO_OK;
  });
}

void stgeo_curve_destroy(stgeo_curve* curve) { delete curve; }

stgeo_status stgeo_curve_dims(const stgeo_curve* curve, int32_t* rows, int32_t* cols,
                              int32_t* reals_per_entry) {
  if (stgeo_status s = require(curve != nullptr, "null curve"); s != STGEO_OK) return s;
  const auto& info = curve->curve.info();
  if (rows) *rows = info.n;
  if (cols) *cols = info.k;
  if (reals_per_entry) *reals_per_entry = stgeo::algebra_real_dim(info.algebra);
  return STGEO_OK;
}

stgeo_status stgeo_curve_eval(const stgeo_curve* curve, double t, double* point,
                              double* residual) {
  if (stgeo_status s = require(curve && point, "null argument"); s != STGEO_OK) return s;
  return wrap([&] {
    double r = 0.0;
    const std::vector<double> flat = curve->curve.eval_flat(t, &r);
    std::memcpy(point, flat.data(), flat.size() * sizeof(double));
    if (residual) *residual = r;
    return STGEO_OK;
  });
}

stgeo_status stgeo_curve_eval_json(const stgeo_curve* curve, double t, int32_t with_velocity,
                                   char** out_json) {
  if (stgeo_status s = require(curve && out_json, "null argument"); s != STGEO_OK) return s;
  return wrap([&] {
    stgeo::json j{{"t", t},
                  {"point", curve->curve.point_json(t)},
                  {"residual", curve->curve.constraint_residual(t)}};
    if (with_velocity) j["velocity"] = curve->curve.velocity_json(t);
    *out_json = dup_string(j.dump());
    return STGEO_OK;
  });
}

stgeo_status stgeo_curve_curvature(const stgeo_curve* curve, double t, double* out_kappa) {
  if (stgeo_status s = require(curve && out_kappa, "null argument"); s != STGEO_OK) return s;
  return wrap([&] {
    *out_kappa = curve->curve.curvature(t);
    return STGEO_OK;
  });
}

stgeo_status stgeo_curve_grassmann_json(const stgeo_curve* curve, double t, char** out_json) {
  if (stgeo_status s = require(curve && out_json, "null argument"); s != STGEO_OK) return s;
  return wrap([&] {
    *out_json = dup_string(curve->curve.grassmann_json(t).dump());
    return STGEO_OK;
  });
}

stgeo_status stgeo_verify(const char* suite, uint64_t seed, int32_t trials, double tol,
                          char** out_report_json, int32_t* out_all_pass) {
  if (stgeo_status s = require(suite != nullptr, "null suite name"); s != STGEO_OK) return s;
  const std::string name = suite;
  if (name != "all" && !stgeo::is_suite_name(name)) {
    g_last_error = "unknown suite: " + name;
    return STGEO_ERROR_UNKNOWN_SUITE;
  }
  return wrap([&] {
    stgeo::VerifyConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.tol = tol;
    std::vector<stgeo::SuiteResult> results;
    if (name == "all")
      results = stgeo::run_all(cfg);
    else
      results.push_back(stgeo::run_suite(name, cfg));
    bool pass = true;
    for (const auto& r : results) pass = pass && r.pass;
    if (out_report_json) *out_report_json = dup_string(stgeo::report_json(results).dump(2));
    if (out_all_pass) *out_all_pass = pass ? 1 : 0;
    return STGEO_OK;
  });
}

stgeo_status stgeo_compare_metrics(const char* config_json, uint64_t seed, int32_t trials,
                                   char** out_table_json) {
  if (stgeo_status s = require(out_table_json != nullptr, "null output argument");
      s != STGEO_OK)
    return s;
  return wrap([&] {
    stgeo::Algebra algebra = stgeo::Algebra::Real;
    int n = 4, k = 2;
    if (config_json && *config_json) {
      stgeo::json cfg = stgeo::json::parse(config_json, nullptr, false);
      if (cfg.is_discarded()) throw stgeo::parse_error("invalid compare-metrics config JSON");
      if (cfg.contains("algebra")) {
        try {
          algebra = stgeo::algebra_from_name(cfg["algebra"].get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw stgeo::parse_error(e.what());
        }
      }
      n = cfg.value("n", n);
      k = cfg.value("k", k);
    }
    if (k < 1 || k > n) throw stgeo::parse_error("compare-metrics needs 1 <= k <= n");
    if (trials <= 0) trials = 100;
    *out_table_json = dup_string(stgeo::compare_metrics_json(algebra, n, k, seed, trials).dump(2));
    return STGEO_OK;
  });
}

void stgeo_string_free(char* s) { std::free(s); }

}  // extern "C"
