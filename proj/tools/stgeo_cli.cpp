// stgeo: sample extremal curves on Stiefel/Grassmann manifolds, run the
// verification suites, compare the homogeneous metrics, report curvature.
// Links against the stiefel_geo C API only.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stiefel_geo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string spec_path;
  std::string inline_json;
  std::string output;
  std::string format = "csv";
  uint64_t seed = 0;
  int trials = 0;
  double tol = 0.0;
  int samples = 11;
  double t0 = 0.0;
  double t1 = 1.0;
  bool velocity = false;
  bool grassmann = false;
};

void add_io_flags(CLI::App* cmd, CommonOpts& o, bool with_spec, bool with_range) {
  if (with_spec) {
    cmd->add_option("--spec", o.spec_path, "path to a curve/config spec JSON file");
    cmd->add_option("--inline", o.inline_json, "inline spec JSON");
  }
  cmd->add_option("--seed", o.seed, "RNG seed (STIEFEL_GEO_SEED overrides)");
  cmd->add_option("--trials", o.trials, "trial count (0 = per-check default)");
  cmd->add_option("--tol", o.tol, "tolerance override (0 = per-check default)");
  cmd->add_option("--output", o.output, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  if (with_range) {
    cmd->add_option("--samples", o.samples, "number of sample points")->check(CLI::PositiveNumber);
    cmd->add_option("--t0", o.t0, "range start");
    cmd->add_option("--t1", o.t1, "range end");
  }
}

void apply_env_seed(CommonOpts& o) {
  if (const char* env = std::getenv("STIEFEL_GEO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') o.seed = v;
  }
}

int load_spec_text(const CommonOpts& o, std::string& out) {
  if (!o.inline_json.empty() && !o.spec_path.empty()) {
    std::cerr << "error: give either --spec or --inline, not both\n";
    return kExitUsage;
  }
  if (!o.inline_json.empty()) {
    out = o.inline_json;
    return kExitOk;
  }
  if (o.spec_path.empty()) {
    std::cerr << "error: a spec is required (--spec FILE or --inline JSON)\n";
    return kExitUsage;
  }
  std::ifstream in(o.spec_path);
  if (!in) {
    std::cerr << "error: cannot open spec file: " << o.spec_path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return kExitOk;
}

int write_output(const CommonOpts& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << o.output << "\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> component_suffixes(int reals_per_entry) {
  switch (reals_per_entry) {
    case 2: return {".re", ".im"};
    case 4: return {".q0", ".q1", ".q2", ".q3"};
    default: return {""};
  }
}

int report_api_error(const char* what, stgeo_status s) {
  std::cerr << "error: " << what << ": " << stgeo_last_error() << "\n";
  return s == STGEO_ERROR_PARSE || s == STGEO_ERROR_INVALID_ARGUMENT ||
                 s == STGEO_ERROR_UNKNOWN_SUITE
             ? kExitUsage
             : kExitCheckFailed;
}

// --------------------------------------------------------------------------

int cmd_sample(const CommonOpts& o) {
  if (o.grassmann && o.format != "json") {
    std::cerr << "error: --grassmann requires --format json\n";
    return kExitUsage;
  }
  std::string spec;
  if (int rc = load_spec_text(o, spec); rc != kExitOk) return rc;

  stgeo_curve* curve = nullptr;
  if (stgeo_status s = stgeo_curve_create(spec.c_str(), &curve); s != STGEO_OK)
    return report_api_error("bad curve spec", s);

  int32_t rows = 0, cols = 0, rpe = 1;
  stgeo_curve_dims(curve, &rows, &cols, &rpe);
  const double step = o.samples > 1 ? (o.t1 - o.t0) / (o.samples - 1) : 0.0;

  std::string out;
  if (o.format == "json") {
    nlohmann::json doc;
    doc["spec"] = nlohmann::json::parse(spec);
    nlohmann::json samples = nlohmann::json::array();
    for (int i = 0; i < o.samples; ++i) {
      const double t = o.t0 + step * i;
      char* sample_json = nullptr;
      stgeo_status s = o.grassmann ? stgeo_curve_grassmann_json(curve, t, &sample_json)
                                   : stgeo_curve_eval_json(curve, t, o.velocity ? 1 : 0,
                                                           &sample_json);
      if (s != STGEO_OK) {
        stgeo_curve_destroy(curve);
        return report_api_error("evaluation failed", s);
      }
      nlohmann::json row = nlohmann::json::parse(sample_json);
      stgeo_string_free(sample_json);
      if (o.grassmann) row = nlohmann::json{{"t", t}, {"reflection", std::move(row)}};
      samples.push_back(std::move(row));
    }
    doc["samples"] = std::move(samples);
    out = doc.dump(2) + "\n";
  } else {
    const auto suffixes = component_suffixes(rpe);
    std::ostringstream csv;
    csv << "t";
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        for (const auto& suf : suffixes) csv << ",m[" << i << "][" << j << "]" << suf;
    if (o.velocity)
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          for (const auto& suf : suffixes) csv << ",v[" << i << "][" << j << "]" << suf;
    csv << ",residual\n";

    std::vector<double> point(size_t(rows) * cols * rpe);
    std::vector<double> vel(point.size());
    for (int i = 0; i < o.samples; ++i) {
      const double t = o.t0 + step * i;
      double residual = 0.0;
      if (stgeo_status s = stgeo_curve_eval(curve, t, point.data(), &residual); s != STGEO_OK) {
        stgeo_curve_destroy(curve);
        return report_api_error("evaluation failed", s);
      }
      csv << fmt_double(t);
      for (double v : point) csv << "," << fmt_double(v);
      if (o.velocity) {
        const double h = 1e-6;
        std::vector<double> pp(point.size()), pm(point.size());
        stgeo_curve_eval(curve, t + h, pp.data(), nullptr);
        stgeo_curve_eval(curve, t - h, pm.data(), nullptr);
        for (size_t c = 0; c < point.size(); ++c) csv << "," << fmt_double((pp[c] - pm[c]) / (2 * h));
      }
      csv << "," << fmt_double(residual) << "\n";
    }
    out = csv.str();
  }
  stgeo_curve_destroy(curve);
  return write_output(o, out);
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
  char* report = nullptr;
  int32_t all_pass = 0;
  const stgeo_status s =
      stgeo_verify(suite.c_str(), o.seed, o.trials, o.tol, &report, &all_pass);
  if (s == STGEO_ERROR_UNKNOWN_SUITE) {
    std::cerr << "error: " << stgeo_last_error() << "\n"
              << "usage: stgeo verify --suite "
                 "all|structure|horizontality|isometry|curvature|euler-lagrange|grassmann|"
                 "ode-oracle|quaternion-embed\n";
    return kExitUsage;
  }
  if (s != STGEO_OK) return report_api_error("verify failed", s);

  const nlohmann::json doc = nlohmann::json::parse(report);
  if (!o.output.empty()) {
    CommonOpts file_only = o;
    if (int rc = write_output(file_only, std::string(report) + "\n"); rc != kExitOk) {
      stgeo_string_free(report);
      return rc;
    }
  }
  if (o.format == "json") {
    if (o.output.empty()) std::cout << report << "\n";
  } else {
    for (const auto& suite_doc : doc["suites"]) {
      for (const auto& check : suite_doc["checks"]) {
        std::printf("%s %-52s maxResidual=%-12.3e tol=%.1e trials=%d\n",
                    check["pass"].get<bool>() ? "PASS" : "FAIL",
                    check["check"].get<std::string>().c_str(),
                    check["maxResidual"].get<double>(), check["tol"].get<double>(),
                    check["trials"].get<int>());
      }
    }
    std::printf("%s\n", all_pass ? "all checks passed" : "some checks FAILED");
  }
  stgeo_string_free(report);
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_compare_metrics(const CommonOpts& o) {
  std::string cfg;
  if (!o.inline_json.empty() || !o.spec_path.empty()) {
    if (int rc = load_spec_text(o, cfg); rc != kExitOk) return rc;
  }
  char* table = nullptr;
  if (stgeo_status s =
          stgeo_compare_metrics(cfg.empty() ? nullptr : cfg.c_str(), o.seed,
                                o.trials > 0 ? o.trials : 100, &table);
      s != STGEO_OK)
    return report_api_error("compare-metrics failed", s);

  std::string out;
  if (o.format == "json") {
    out = std::string(table) + "\n";
  } else {
    const nlohmann::json doc = nlohmann::json::parse(table);
    std::ostringstream csv;
    csv << "trial,reduced,quasigeodesic,orthogonal,ambient\n";
    for (const auto& row : doc["rows"])
      csv << row["trial"].get<int>() << "," << fmt_double(row["reduced"].get<double>()) << ","
          << fmt_double(row["quasigeodesic"].get<double>()) << ","
          << fmt_double(row["orthogonal"].get<double>()) << ","
          << fmt_double(row["ambient"].get<double>()) << "\n";
    csv << "# max|reduced-quasigeodesic|="
        << fmt_double(doc["summary"]["max|reduced-quasigeodesic|"].get<double>()) << "\n";
    csv << "# max|reduced-orthogonal|/reduced="
        << fmt_double(doc["summary"]["max|reduced-orthogonal|/reduced"].get<double>()) << "\n";
    out = csv.str();
  }
  stgeo_string_free(table);
  return write_output(o, out);
}

int cmd_curvature(const CommonOpts& o) {
  std::string spec;
  if (int rc = load_spec_text(o, spec); rc != kExitOk) return rc;
  stgeo_curve* curve = nullptr;
  if (stgeo_status s = stgeo_curve_create(spec.c_str(), &curve); s != STGEO_OK)
    return report_api_error("bad curve spec", s);

  const double step = o.samples > 1 ? (o.t1 - o.t0) / (o.samples - 1) : 0.0;
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < o.samples; ++i) {
    const double t = o.t0 + step * i;
    double kappa = 0.0;
    if (stgeo_status s = stgeo_curve_curvature(curve, t, &kappa); s != STGEO_OK) {
      stgeo_curve_destroy(curve);
      return report_api_error("curvature failed", s);
    }
    rows.emplace_back(t, kappa);
  }
  stgeo_curve_destroy(curve);

  std::string out;
  if (o.format == "json") {
    nlohmann::json doc;
    doc["spec"] = nlohmann::json::parse(spec);
    nlohmann::json samples = nlohmann::json::array();
    for (auto [t, kappa] : rows) samples.push_back({{"t", t}, {"curvature", kappa}});
    doc["samples"] = std::move(samples);
    out = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "t,curvature\n";
    for (auto [t, kappa] : rows) csv << fmt_double(t) << "," << fmt_double(kappa) << "\n";
    out = csv.str();
  }
  return write_output(o, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal curves on Stiefel and Grassmann manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(stgeo_version()));

  CommonOpts opts;
  std::string suite = "all";

  CLI::App* sample = app.add_subcommand("sample", "sample a curve to CSV or JSON");
  add_io_flags(sample, opts, true, true);
  sample->add_flag("--velocity", opts.velocity, "include finite-difference velocity columns");
  sample->add_flag("--grassmann", opts.grassmann,
                   "emit the Grassmann projection (reflection matrices) instead");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_io_flags(verify, opts, false, false);
  verify->add_option("--suite", suite, "suite name or \"all\"");

  CLI::App* compare = app.add_subcommand("compare-metrics",
                                         "tabulate the four metric norms on random tangents");
  add_io_flags(compare, opts, true, false);

  CLI::App* curv = app.add_subcommand("curvature", "sample geodesic curvature along a curve");
  add_io_flags(curv, opts, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // keep the documented contract: usage problems exit with 2
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  apply_env_seed(opts);

  if (sample->parsed()) return cmd_sample(opts);
  if (verify->parsed()) return cmd_verify(opts, suite);
  if (compare->parsed()) return cmd_compare_metrics(opts);
  if (curv->parsed()) return cmd_curvature(opts);
  return kExitUsage;
}
