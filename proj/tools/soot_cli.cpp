// soot: blind sparse deconvolution experiments from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 solver failure, 3 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soot/bench/config.hpp"
#include "soot/bench/experiment.hpp"
#include "soot/bench/synthetic.hpp"
#include "soot/io.hpp"

namespace fs = std::filesystem;
using namespace soot;
using namespace soot::bench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> sigma;
  std::optional<std::vector<double>> sigmas;
  std::optional<int> realizations;
  std::optional<double> lambda, lambda_rel, alpha, beta, eta, lambda_b;
  std::optional<int> inner_x, inner_h, max_outer, threads;
  std::string method = "soot";
  std::optional<std::vector<int>> j_values;
  bool verbose = false;
  bool align_scale = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  app->add_option("--out", o.out_dir, "Output directory");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--realizations", o.realizations, "Noise realizations per level");
  app->add_option("--lambda", o.lambda, "Absolute SOOT penalty weight (overrides lambda_rel)");
  app->add_option("--lambda-rel", o.lambda_rel, "SOOT penalty weight relative to ||y||^2");
  app->add_option("--alpha", o.alpha, "l1 smoothing");
  app->add_option("--beta", o.beta, "log offset");
  app->add_option("--eta", o.eta, "l2 smoothing");
  app->add_option("--lambda-b", o.lambda_b, "Baseline l1 weight");
  app->add_option("--inner-x", o.inner_x, "Inner x iterations per outer iteration (J)");
  app->add_option("--inner-h", o.inner_h, "Inner h iterations per outer iteration (I)");
  app->add_option("--max-outer", o.max_outer, "Outer iteration cap");
  app->add_option("--threads", o.threads, "OpenMP threads for realization-level parallelism");
  app->add_flag("--align-scale", o.align_scale, "Diagnostics: rescale estimates before scoring");
  app->add_flag("-v,--verbose", o.verbose, "Also write per-run trace CSVs");
}

ExperimentConfig resolve(const CommonOptions& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.sigmas) c.sigma_list = *o.sigmas;
  if (o.sigma) {
    c.sigma_list = {*o.sigma};
    c.innerloop_sigma = *o.sigma;
    c.grid.sigma = *o.sigma;
  }
  if (o.realizations) {
    c.realizations = *o.realizations;
    c.innerloop_realizations = *o.realizations;
    c.grid.realizations = *o.realizations;
  }
  if (o.lambda) c.soot.lambda_abs = *o.lambda;
  if (o.lambda_rel) {
    c.soot.lambda_rel = *o.lambda_rel;
    if (!o.lambda) c.soot.lambda_abs.reset();
  }
  if (o.alpha) c.soot.alpha = *o.alpha;
  if (o.beta) c.soot.beta = *o.beta;
  if (o.eta) c.soot.eta = *o.eta;
  if (o.lambda_b) c.baseline.lambda_b = *o.lambda_b;
  if (o.inner_x) c.soot.inner_x = *o.inner_x;
  if (o.inner_h) c.soot.inner_h = *o.inner_h;
  if (o.max_outer) {
    c.soot.max_outer = *o.max_outer;
    c.baseline.outer_iters = *o.max_outer;
    c.innerloop_max_outer = *o.max_outer;
  }
  if (o.threads) c.threads = *o.threads;
  if (o.j_values) c.j_values = *o.j_values;
  c.align_scale = o.align_scale;
  c.validate();
  return c;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& c, const std::string& command,
                    const std::vector<RunRecord>& runs) {
  auto out = open_out(dir / "manifest.json");
  out << run_manifest(c, command, runs).dump(2) << '\n';
}

void write_traces(const fs::path& dir, const std::vector<RunRecord>& runs) {
  const fs::path tdir = prepare_dir((dir / "traces").string());
  for (const auto& r : runs) {
    std::string name = to_string(r.method) + "_sigma" + std::to_string(r.sigma) + "_r" +
                       std::to_string(r.realization);
    if (r.method == Method::kSoot) name += "_J" + std::to_string(r.inner_x);
    auto out = open_out(tdir / (name + ".csv"));
    write_trace_csv(out, r.result.trace);
  }
}

void report_run(const RunRecord& r) {
  std::cout << to_string(r.method) << ": " << (r.failed ? "FAILED (" + r.error + ")" : to_string(r.termination))
            << " after " << r.outer_iterations << " outer iterations, " << r.time_s << " s\n"
            << "  signal l2 " << r.signal.l2 << "  l1 " << r.signal.l1 << "\n"
            << "  kernel l2 " << r.kernel.l2 << "  l1 " << r.kernel.l1 << "\n"
            << "  obs    l2 " << r.obs.l2 << "  l1 " << r.obs.l1 << "\n";
}

int cmd_generate(const CommonOptions& o) {
  const ExperimentConfig c = resolve(o);
  const fs::path dir = prepare_dir(o.out_dir);
  const Instance inst = make_instance(c, c.sigma_list.front(), realization_seed(c.seed, 0, 0));
  write_array_file(dir / "x_true.csv", inst.x_true);
  write_array_file(dir / "h_true.csv", inst.h_true);
  write_array_file(dir / "y.csv", inst.y);
  RunRecord seed_only;
  seed_only.sigma = inst.sigma;
  seed_only.noise_seed = inst.noise_seed;
  write_manifest(dir, c, "generate", {seed_only});
  std::cout << "wrote x_true.csv, h_true.csv, y.csv to " << dir << '\n';
  return kExitOk;
}

std::vector<RunRecord> solve_one(const ExperimentConfig& c, const std::vector<Method>& methods) {
  const Instance inst = make_instance(c, c.sigma_list.front(), realization_seed(c.seed, 0, 0));
  std::vector<RunRecord> runs;
  for (Method m : methods) runs.push_back(run_method(inst, m, c));
  return runs;
}

void write_estimates(const fs::path& dir, const RunRecord& r) {
  const std::string m = to_string(r.method);
  write_array_file(dir / (m + "_x_hat.csv"), r.result.x_hat);
  write_array_file(dir / (m + "_h_hat.csv"), r.result.h_hat);
  auto out = open_out(dir / (m + "_trace.csv"));
  write_trace_csv(out, r.result.trace);
}

int cmd_solve(const CommonOptions& o, const std::vector<Method>& methods, const char* name) {
  const ExperimentConfig c = resolve(o);
  const fs::path dir = prepare_dir(o.out_dir);
  const auto runs = solve_one(c, methods);
  int code = kExitOk;
  std::vector<MetricsRow> rows;
  for (const auto& r : runs) {
    report_run(r);
    if (r.failed) {
      code = kExitSolver;
    } else {
      write_estimates(dir, r);
    }
    MetricsRow row;
    row.sigma = r.sigma;
    row.method = to_string(r.method);
    row.signal = r.signal;
    row.kernel = r.kernel;
    row.obs = r.obs;
    row.time_s = r.time_s;
    row.runs = r.failed ? 0 : 1;
    row.failures = r.failed ? 1 : 0;
    rows.push_back(row);
  }
  auto metrics = open_out(dir / "metrics.csv");
  write_metrics_csv(metrics, rows);
  auto runs_out = open_out(dir / "runs.csv");
  write_runs_csv(runs_out, runs);
  write_manifest(dir, c, name, runs);
  return code;
}

int cmd_bench(const CommonOptions& o) {
  const ExperimentConfig c = resolve(o);
  const fs::path dir = prepare_dir(o.out_dir);
  const TableResult t = run_table(c);
  write_metrics_csv(std::cout, t.rows);
  auto metrics = open_out(dir / "metrics.csv");
  write_metrics_csv(metrics, t.rows);
  auto detail = open_out(dir / "metrics_detail.csv");
  write_metrics_detail_csv(detail, t.rows);
  auto runs = open_out(dir / "runs.csv");
  write_runs_csv(runs, t.runs);
  write_manifest(dir, c, "bench", t.runs);
  if (o.verbose) write_traces(dir, t.runs);
  return kExitOk;
}

int cmd_innerloops(const CommonOptions& o) {
  const ExperimentConfig c = resolve(o);
  const fs::path dir = prepare_dir(o.out_dir);
  const InnerLoopResult r = run_innerloop_study(c, c.j_values);
  write_innerloop_csv(std::cout, r.rows);
  auto out = open_out(dir / "innerloops.csv");
  write_innerloop_csv(out, r.rows);
  auto runs = open_out(dir / "runs.csv");
  write_runs_csv(runs, r.runs);
  write_manifest(dir, c, "innerloops", r.runs);
  if (o.verbose) write_traces(dir, r.runs);
  return kExitOk;
}

int cmd_gridsearch(const CommonOptions& o) {
  ExperimentConfig c = resolve(o);
  const fs::path dir = prepare_dir(o.out_dir);
  const Method method = parse_method(o.method);
  const GridResult g = method == Method::kSoot ? grid_search(c) : grid_search_baseline(c);
  write_grid_csv(std::cout, g, method);
  auto out = open_out(dir / (method == Method::kSoot ? "grid_soot.csv" : "grid_baseline.csv"));
  write_grid_csv(out, g, method);
  if (method == Method::kSoot) {
    apply_best(g, c.soot);
  } else {
    c.baseline.lambda_b = g.cells[g.best].lambda_rel;
  }
  auto best = open_out(dir / "best_config.json");
  best << nlohmann::json(c).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse blind deconvolution with the smoothed l1/l2 penalty"};
  app.require_subcommand(1);

  CommonOptions o;
  auto* gen = app.add_subcommand("generate", "Write a synthetic truth/observation pair");
  auto* solve = app.add_subcommand("solve", "Solve one synthetic instance");
  auto* compare = app.add_subcommand("compare", "Solve one instance with both methods");
  auto* bench = app.add_subcommand("bench", "Noise-level comparison table");
  auto* inner = app.add_subcommand("innerloops", "Reconstruction time versus inner-loop count");
  auto* grid = app.add_subcommand("gridsearch", "Exhaustive hyperparameter search");
  for (auto* sub : {gen, solve, compare, bench, inner, grid}) add_common(sub, o);
  for (auto* sub : {gen, solve, compare}) sub->add_option("--sigma", o.sigma, "Noise standard deviation");
  bench->add_option("--sigmas", o.sigmas, "Noise levels")->delimiter(',');
  inner->add_option("--sigma", o.sigma, "Noise standard deviation");
  inner->add_option("--j-values", o.j_values, "Inner-loop counts to study")->delimiter(',');
  grid->add_option("--sigma", o.sigma, "Noise standard deviation");
  for (auto* sub : {solve, grid}) {
    sub->add_option("--method", o.method, "soot or baseline")->check(CLI::IsMember({"soot", "baseline"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*solve) return cmd_solve(o, {parse_method(o.method)}, "solve");
    if (*compare) return cmd_solve(o, {Method::kSoot, Method::kBaseline}, "compare");
    if (*bench) return cmd_bench(o);
    if (*inner) return cmd_innerloops(o);
    if (*grid) return cmd_gridsearch(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
