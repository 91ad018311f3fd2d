// Command-line front end: derivative polynomial generation, sign-condition
// certification, minimal-alpha search, scattered interpolation, and the
// convergence benchmark.

#include <cinfrbf.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using json = nlohmann::json;
using namespace cinfrbf;
using steady = std::chrono::steady_clock;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_parse = 2;
constexpr int exit_refuted = 3;
constexpr int exit_not_pd = 4;

double ms_since(steady::time_point t0) {
  return std::chrono::duration<double, std::milli>(steady::now() - t0).count();
}

std::string sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct report_sink {
  std::string json_path;  // empty = no machine output, "-" = stdout (suppresses tables)
  json doc;
  bool flushed = false;

  bool machine_only() const { return json_path == "-"; }
  bool human() const { return !machine_only(); }

  void flush() {
    if (json_path.empty() || flushed) return;
    flushed = true;
    if (machine_only()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::ofstream out(json_path);
      if (!out) throw std::runtime_error("cannot write '" + json_path + "'");
      out << doc.dump(2) << "\n";
    }
  }
};

json certificate_json(const sign_certificate& c) {
  json j;
  j["j"] = c.order;
  j["alpha"] = rational_to_string(c.alpha);
  j["verdict"] = c.proven() ? "ProvenNonnegative" : "Counterexample";
  j["method"] = c.method == cert_method::sturm_exact ? "SturmExact" : "GridPrescreen";
  if (!c.proven()) {
    j["u_star"] = rational_to_string(c.u_star);
    j["value"] = rational_to_string(c.value);
  }
  j["isolated_roots"] = c.isolated_roots;
  j["trivially_zero"] = c.trivially_zero;
  j["wall_ms"] = c.wall_ms;
  return j;
}

json report_json(const dimension_report& r) {
  json j;
  j["dim"] = r.dim;
  j["l"] = r.derivative_order;
  j["alpha"] = rational_to_string(r.alpha);
  j["strictly_pd"] = r.strictly_pd;
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = std::move(certs);
  return j;
}

void print_report(const dimension_report& r) {
  std::printf("alpha = %s, dim = %d, derivative orders j = 1..%d\n",
              rational_to_string(r.alpha).c_str(), r.dim, r.derivative_order);
  for (const auto& c : r.certificates) {
    if (c.proven()) {
      std::printf("  j=%d  proven nonnegative  (%s, %d positive roots isolated, %s ms)\n", c.order,
                  c.method == cert_method::sturm_exact ? "Sturm" : "prescreen", c.isolated_roots,
                  sig6(c.wall_ms).c_str());
    } else {
      std::printf("  j=%d  COUNTEREXAMPLE at u* = %s, F_%d = %s  (< 0, exact)\n", c.order,
                  rational_to_string(c.u_star).c_str(), c.order,
                  rational_to_string(c.value).c_str());
    }
  }
  std::printf("verdict: sign conditions %s\n", r.strictly_pd ? "CERTIFIED" : "REFUTED");
}

int cmd_derive(int order, bool expand, report_sink& sink) {
  const auto t0 = steady::now();
  const auto seq = f_sequence(order);
  const bivar_poly& fj = seq.back();
  const double gen_ms = ms_since(t0);

  const std::string text = fj.to_string();
  if (sink.human()) {
    std::printf("F_%d = %s\n", order, text.c_str());
    if (expand) {
      const leading_term_info lt = leading_term(fj);
      std::printf("degrees: alpha %d, u %d; terms: %zu\n", fj.degree_a(), fj.degree_u(),
                  fj.terms().size());
      std::printf("leading: %s*a^%d*u^%d\n", lt.a_j.str().c_str(), lt.deg_a, lt.deg_u);
    }
  }
  sink.doc["command"] = "derive";
  sink.doc["inputs"] = {{"order", order}, {"expand", expand}};
  json out;
  out["polynomial"] = text;
  if (expand) {
    const leading_term_info lt = leading_term(fj);
    out["deg_alpha"] = fj.degree_a();
    out["deg_u"] = fj.degree_u();
    out["terms"] = fj.terms().size();
    out["leading"] = {{"coefficient", lt.a_j.str()}, {"deg_alpha", lt.deg_a}, {"deg_u", lt.deg_u}};
  }
  sink.doc["outputs"] = std::move(out);
  sink.doc["timings_ms"] = {{"generate", gen_ms}};
  return exit_ok;
}

int cmd_verify(const std::string& alpha_text, int dim, bool rigorous, double umax, int samples,
               report_sink& sink) {
  const Rat alpha = parse_rational(alpha_text);
  if (alpha <= 0) throw CLI::ValidationError("--alpha must be positive");
  const auto t0 = steady::now();

  sink.doc["command"] = "verify";
  sink.doc["inputs"] = {{"alpha", rational_to_string(alpha)},
                        {"dim", dim},
                        {"rigorous", rigorous},
                        {"umax", umax},
                        {"samples", samples}};

  if (!rigorous) {
    const int l = derivative_order_for_dim(dim);
    const auto seq = f_sequence(l);
    if (sink.human())
      std::printf("prescreen only (NOT certifying): alpha = %s, dim = %d, j = 1..%d\n",
                  rational_to_string(alpha).c_str(), dim, l);
    json rows = json::array();
    bool any_negative = false;
    for (int j = 1; j <= l; ++j) {
      const prescreen_result pre = grid_prescreen(seq[static_cast<std::size_t>(j - 1)], alpha, umax, samples);
      any_negative = any_negative || pre.min_value < 0;
      if (sink.human())
        std::printf("  j=%d  min sampled F_j = %s at u = %s\n", j, sig6(pre.min_value).c_str(),
                    sig6(pre.argmin).c_str());
      rows.push_back({{"j", j}, {"min_value", pre.min_value}, {"argmin", pre.argmin}});
    }
    if (sink.human())
      std::printf("prescreen %s (run with --rigorous for a certificate)\n",
                  any_negative ? "found negative values" : "found no negative values");
    sink.doc["outputs"] = {{"mode", "prescreen"}, {"rows", rows}, {"negative_found", any_negative}};
    sink.doc["timings_ms"] = {{"prescreen", ms_since(t0)}};
    sink.flush();
    return any_negative ? exit_refuted : exit_ok;
  }

  const dimension_report report = check_dimension(alpha, dim);
  if (sink.human()) print_report(report);
  sink.doc["outputs"] = report_json(report);
  sink.doc["timings_ms"] = {{"certify", ms_since(t0)}};
  sink.flush();
  return report.strictly_pd ? exit_ok : exit_refuted;
}

int cmd_alpha_min(int dim, const std::string& tol_text, report_sink& sink) {
  const Rat tol = parse_rational(tol_text);
  const auto t0 = steady::now();
  const alpha_interval interval = find_alpha_min(dim, tol);
  const double search_ms = ms_since(t0);

  if (sink.human()) {
    std::printf("dim = %d: minimal certified alpha lies in [%s, %s]\n", dim,
                rational_to_string(interval.lo).c_str(), rational_to_string(interval.hi).c_str());
    std::printf("  = [%s, %s], width %s <= tol %s\n", sig6(to_double(interval.lo)).c_str(),
                sig6(to_double(interval.hi)).c_str(), sig6(to_double(interval.width())).c_str(),
                rational_to_string(tol).c_str());
    const sign_certificate* fail = interval.lo_report.first_failure();
    if (fail != nullptr)
      std::printf("  lo refuted by j=%d at u* = %s\n", fail->order,
                  rational_to_string(fail->u_star).c_str());
    std::printf("  hi certified for all j = 1..%d\n", interval.hi_report.derivative_order);
  }
  sink.doc["command"] = "alpha-min";
  sink.doc["inputs"] = {{"dim", dim}, {"tol", rational_to_string(tol)}};
  sink.doc["outputs"] = {{"lo", rational_to_string(interval.lo)},
                         {"hi", rational_to_string(interval.hi)},
                         {"lo_float", to_double(interval.lo)},
                         {"hi_float", to_double(interval.hi)},
                         {"lo_report", report_json(interval.lo_report)},
                         {"hi_report", report_json(interval.hi_report)}};
  sink.doc["timings_ms"] = {{"search", search_ms}};
  return exit_ok;
}

int cmd_interp(const std::string& points_path, const std::string& values_path,
               const std::string& alpha_text, const std::string& delta_text,
               const std::string& query_path, const std::string& out_path,
               const std::string& model_path, bool with_min_eig, bool certify,
               const std::string& kernel_name, report_sink& sink) {
  const Rat alpha_exact = parse_rational(alpha_text);
  const Rat delta_exact = parse_rational(delta_text);
  const kernel_params params(to_double(alpha_exact), to_double(delta_exact));
  const kernel_kind kind = kernel_name == "wendland" ? kernel_kind::wendland : kernel_kind::cinf;

  sink.doc["command"] = "interp";
  sink.doc["inputs"] = {{"points", points_path}, {"values", values_path},
                        {"alpha", rational_to_string(alpha_exact)},
                        {"delta", rational_to_string(delta_exact)},
                        {"query", query_path},    {"out", out_path},
                        {"kernel", kernel_name},  {"certify", certify}};
  sink.doc["outputs"] = json::object();
  json timings;

  bool certified = false;
  const auto t_load = steady::now();
  const point_set pts = read_points_csv(points_path);
  const std::vector<double> values = read_values_csv(values_path);
  timings["load"] = ms_since(t_load);

  if (certify && kind == kernel_kind::cinf) {
    const auto t0 = steady::now();
    const dimension_report report = check_dimension(alpha_exact, pts.dim());
    timings["certify"] = ms_since(t0);
    sink.doc["outputs"]["certification"] = report_json(report);
    if (!report.strictly_pd) {
      if (sink.human()) {
        print_report(report);
        std::printf("refusing to fit: sign conditions refuted for alpha = %s in dim %d\n",
                    rational_to_string(alpha_exact).c_str(), pts.dim());
      }
      sink.doc["timings_ms"] = std::move(timings);
      sink.flush();
      return exit_refuted;
    }
    certified = true;
  }

  const auto t_assemble = steady::now();
  const sparse_sym_matrix A = assemble(pts, params, kind);
  timings["assemble"] = ms_since(t_assemble);

  const auto t_factor = steady::now();
  auto outcome = cholesky_factor::factorize(A);
  timings["factorize"] = ms_since(t_factor);
  if (auto* npd = std::get_if<not_positive_definite>(&outcome)) {
    if (sink.human())
      std::fprintf(stderr,
                   "Gram matrix is not positive definite (pivot %zu of %zu).\n"
                   "Raise alpha, shrink delta, or run `cinfrbf verify --alpha %s --dim %d "
                   "--rigorous` to inspect the sign conditions.\n",
                   npd->pivot, A.n, rational_to_string(alpha_exact).c_str(), pts.dim());
    sink.doc["outputs"]["not_positive_definite"] = {{"pivot", npd->pivot}};
    sink.doc["timings_ms"] = std::move(timings);
    sink.flush();
    return exit_not_pd;
  }
  const auto& factor = std::get<cholesky_factor>(outcome);

  const auto t_solve = steady::now();
  solve_stats stats = solve_interpolation_system(A, factor, values);
  timings["solve"] = ms_since(t_solve);

  interpolant model{pts, stats.coefficients, params, kind};
  model.residual_inf = stats.residual_inf;
  model.refined = stats.refined;
  model.uncertified = !certified;

  json out;
  out["n"] = pts.size();
  out["dim"] = pts.dim();
  out["residual_inf"] = stats.residual_inf;
  out["refined"] = stats.refined;
  out["nnz"] = A.nnz_full();
  out["nnz_fraction"] = A.nnz_fraction();
  out["uncertified_warning"] = model.uncertified;
  if (with_min_eig) {
    const auto t0 = steady::now();
    out["min_eig_estimate"] = min_eig_estimate(A, factor);
    timings["min_eig"] = ms_since(t0);
  }

  if (sink.human()) {
    std::printf("fitted %zu centers in dim %d: residual_inf = %s, nnz = %zu (%s of full)%s\n",
                pts.size(), pts.dim(), sig6(stats.residual_inf).c_str(), A.nnz_full(),
                sig6(A.nnz_fraction()).c_str(), stats.refined ? " [refined]" : "");
    if (model.uncertified)
      std::printf("warning: alpha = %s not certified for dim %d in this run (use --certify)\n",
                  rational_to_string(alpha_exact).c_str(), pts.dim());
    if (with_min_eig)
      std::printf("min eigenvalue estimate: %s\n", sig6(out["min_eig_estimate"].get<double>()).c_str());
  }

  if (!query_path.empty()) {
    const auto t0 = steady::now();
    std::vector<std::vector<double>> qrows = read_csv(query_path);
    std::vector<double> predictions;
    if (!qrows.empty()) {
      const point_set queries = point_set::from_rows(qrows);
      if (queries.dim() != pts.dim())
        throw std::runtime_error(query_path + ": query dimension mismatch");
      predictions = evaluate(model, queries);
    }
    timings["evaluate"] = ms_since(t0);
    out["predictions"] = predictions.size();
    if (!out_path.empty()) {
      write_values_csv(out_path, predictions);
      if (sink.human())
        std::printf("wrote %zu predictions to %s\n", predictions.size(), out_path.c_str());
    } else if (sink.human()) {
      for (double v : predictions) std::printf("%.17g\n", v);
    }
  }
  if (!model_path.empty()) {
    write_model(model_path, model);
    if (sink.human()) std::printf("wrote model to %s\n", model_path.c_str());
  }

  sink.doc["outputs"].update(out);
  sink.doc["timings_ms"] = std::move(timings);
  return exit_ok;
}

int cmd_bench(const bench_config& cfg, const std::string& out_path, report_sink& sink) {
  const auto t0 = steady::now();
  const std::vector<bench_result> results = run_bench(cfg);
  const double bench_ms = ms_since(t0);

  auto csv_lines = [&] {
    std::string text = "kernel,level,n,fill,max_err,rms_err,cond_est,nnz_frac,factor_ok\n";
    for (const auto& res : results) {
      for (const auto& row : res.rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      res.kind == kernel_kind::cinf ? "cinf" : "wendland", row.level, row.n,
                      row.fill, row.max_err, row.rms_err, row.cond_est, row.nnz_frac,
                      row.factor_ok ? 1 : 0);
        text += buf;
      }
    }
    return text;
  };

  if (sink.human()) {
    for (const auto& res : results) {
      std::printf("kernel %s:\n", res.kind == kernel_kind::cinf ? "cinf" : "wendland");
      std::printf("  %-5s %-7s %-10s %-10s %-10s %-10s %-9s\n", "level", "n", "fill", "max_err",
                  "rms_err", "cond_est", "nnz_frac");
      for (const auto& row : res.rows) {
        if (row.factor_ok)
          std::printf("  %-5d %-7zu %-10s %-10s %-10s %-10s %-9s\n", row.level, row.n,
                      sig6(row.fill).c_str(), sig6(row.max_err).c_str(), sig6(row.rms_err).c_str(),
                      sig6(row.cond_est).c_str(), sig6(row.nnz_frac).c_str());
        else
          std::printf("  %-5d %-7zu %-10s NOT POSITIVE DEFINITE (pivot %zu)\n", row.level, row.n,
                      sig6(row.fill).c_str(), row.pivot);
      }
    }
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << csv_lines();
    if (sink.human()) std::printf("wrote CSV to %s\n", out_path.c_str());
  }

  sink.doc["command"] = "bench";
  sink.doc["inputs"] = {{"dim", cfg.dim},       {"alpha", cfg.alpha},   {"delta", cfg.delta},
                        {"levels", cfg.levels}, {"target", cfg.target}, {"seed", cfg.seed}};
  json kernels = json::array();
  bool any_failure = false;
  for (const auto& res : results) {
    json rows = json::array();
    for (const auto& row : res.rows) {
      any_failure = any_failure || !row.factor_ok;
      rows.push_back({{"level", row.level},
                      {"n", row.n},
                      {"fill", row.fill},
                      {"max_err", row.max_err},
                      {"rms_err", row.rms_err},
                      {"cond_est", row.cond_est},
                      {"nnz_frac", row.nnz_frac},
                      {"factor_ok", row.factor_ok},
                      {"pivot", row.pivot}});
    }
    kernels.push_back(
        {{"kernel", res.kind == kernel_kind::cinf ? "cinf" : "wendland"}, {"rows", rows}});
  }
  sink.doc["outputs"] = {{"kernels", kernels}};
  sink.doc["timings_ms"] = {{"bench", bench_ms}};
  return any_failure ? exit_not_pd : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compactly supported C-infinity RBF toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // let --json appear after the subcommand

  std::string json_path;
  app.add_option("--json", json_path,
                 "write the machine-readable run report to this file ('-' = stdout, suppresses tables)");

  auto* derive = app.add_subcommand("derive", "generate the derivative polynomial F_j");
  int order = 1;
  bool expand = false;
  derive->add_option("--order", order, "derivative order j")->required()->check(CLI::Range(1, 12));
  derive->add_flag("--expand", expand, "also print degree box and leading term");

  auto* verify = app.add_subcommand("verify", "check the sign conditions for a dimension");
  std::string alpha_text = "2", tol_text = "1e-3", delta_text = "0.4";
  int dim = 1;
  bool rigorous = false;
  double umax = 50.0;
  int samples = 1000;
  verify->add_option("--alpha", alpha_text, "shape parameter (exact fraction, e.g. 5/2)")->required();
  verify->add_option("--dim", dim, "spatial dimension")->required()->check(CLI::PositiveNumber);
  verify->add_flag("--rigorous", rigorous, "exact Sturm certification (otherwise prescreen only)");
  verify->add_option("--umax", umax, "prescreen sample range [0, umax]");
  verify->add_option("--samples", samples, "prescreen sample count");

  auto* alpha_min = app.add_subcommand("alpha-min", "bracket the minimal certified alpha");
  alpha_min->add_option("--dim", dim, "spatial dimension")->required()->check(CLI::PositiveNumber);
  alpha_min->add_option("--tol", tol_text, "bracket width tolerance (exact fraction or decimal)");

  auto* interp = app.add_subcommand("interp", "fit and evaluate a scattered-data interpolant");
  std::string points_path, values_path, query_path, out_path, model_path, kernel_name = "cinf";
  bool with_min_eig = false, certify = false;
  interp->add_option("--points", points_path, "CSV of points (one per row)")->required();
  interp->add_option("--values", values_path, "CSV of values (one column)")->required();
  interp->add_option("--alpha", alpha_text, "shape parameter (exact fraction)")->required();
  interp->add_option("--delta", delta_text, "support radius (exact fraction)")->required();
  interp->add_option("--query", query_path, "CSV of query points");
  interp->add_option("--out", out_path, "output CSV for predictions");
  interp->add_option("--model-out", model_path, "write the fitted model dump here");
  interp->add_flag("--min-eig", with_min_eig, "estimate the smallest Gram eigenvalue");
  interp->add_flag("--certify", certify, "run the exact sign-condition check first");
  interp->add_option("--kernel", kernel_name, "kernel: cinf or wendland")
      ->check(CLI::IsMember({"cinf", "wendland"}));

  auto* bench = app.add_subcommand("bench", "nested-refinement convergence benchmark");
  bench_config cfg;
  bench->add_option("--dim", cfg.dim, "spatial dimension")->check(CLI::PositiveNumber);
  bench->add_option("--alpha", cfg.alpha, "shape parameter");
  bench->add_option("--delta", cfg.delta, "support radius");
  bench->add_option("--levels", cfg.levels, "number of nested refinement levels")
      ->check(CLI::Range(2, 8));
  bench->add_option("--target", cfg.target, "target function (sincos, gauss)");
  bench->add_option("--seed", cfg.seed, "evaluation-cloud RNG seed");
  bench->add_option("--out", out_path, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_parse;
  }

  report_sink sink{json_path, json::object()};
  try {
    int rc = exit_failure;
    if (*derive)
      rc = cmd_derive(order, expand, sink);
    else if (*verify)
      rc = cmd_verify(alpha_text, dim, rigorous, umax, samples, sink);
    else if (*alpha_min)
      rc = cmd_alpha_min(dim, tol_text, sink);
    else if (*interp)
      rc = cmd_interp(points_path, values_path, alpha_text, delta_text, query_path, out_path,
                      model_path, with_min_eig, certify, kernel_name, sink);
    else if (*bench)
      rc = cmd_bench(cfg, out_path, sink);
    sink.flush();
    return rc;
  } catch (const not_positive_definite_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_not_pd;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_parse;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    std::fprintf(stderr, "error: %s\n", what.c_str());
    // File and format problems count as parse failures.
    if (what.find("cannot open") != std::string::npos ||
        what.find("cannot write") != std::string::npos ||
        what.find("not a numeric row") != std::string::npos ||
        what.find("column count") != std::string::npos ||
        what.find("dimension mismatch") != std::string::npos)
      return exit_parse;
    return exit_failure;
  }
}
