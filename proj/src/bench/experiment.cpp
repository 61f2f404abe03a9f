#include "soot/bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#ifdef SOOT_HAVE_OPENMP
#include <omp.h>
#endif

#include "soot/baseline.hpp"
#include "soot/bench/synthetic.hpp"
#include "soot/prox.hpp"

namespace soot::bench {

std::string to_string(Method m) { return m == Method::kSoot ? "soot" : "baseline"; }

Method parse_method(const std::string& name) {
  if (name == "soot") return Method::kSoot;
  if (name == "baseline") return Method::kBaseline;
  throw ConfigError("unknown method '" + name + "' (expected soot or baseline)");
}

Instance make_instance(const ExperimentConfig& cfg, double sigma, std::uint64_t noise_seed) {
  Instance inst;
  inst.x_true = gen_reflectivity(cfg.n, cfg.spike_prob, {cfg.x_min, cfg.x_max}, cfg.seed);
  inst.h_true = ricker_wavelet(cfg.s, cfg.ricker_peak_hz, cfg.sample_interval_s);
  inst.y = gen_observation(inst.x_true, inst.h_true, sigma, noise_seed);
  inst.g1 = BoxConstraint(cfg.x_min, cfg.x_max);
  inst.g2 = kernel_constraint_from_truth(inst.h_true, cfg.radius_factor);
  auto [x0, h0] = init_strategy(cfg.n, cfg.s, {cfg.x_min, cfg.x_max}, inst.g2);
  inst.x0 = std::move(x0);
  inst.h0 = std::move(h0);
  inst.sigma = sigma;
  inst.noise_seed = noise_seed;
  return inst;
}

namespace {

using Clock = std::chrono::steady_clock;

// Run fn(i) for i in [0, count), in parallel when OpenMP is available.
// Results are written by index so the output order never depends on the
// schedule.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
#ifdef SOOT_HAVE_OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    fn(static_cast<std::size_t>(i));
  }
#else
  (void)threads;
  for (std::size_t i = 0; i < count; ++i) fn(i);
#endif
}

}  // namespace

RunRecord run_method(const Instance& inst, Method method, const ExperimentConfig& cfg) {
  RunRecord rec;
  rec.method = method;
  rec.sigma = inst.sigma;
  rec.noise_seed = inst.noise_seed;
  rec.inner_x = method == Method::kSoot ? cfg.soot.inner_x : 0;
  rec.obs = error_metrics(inst.x_true, inst.y);
  rec.obs_raw = raw_error_norms(inst.x_true, inst.y);

  const SootParams params = cfg.soot.params_for(inst.y);
  try {
    const auto t0 = Clock::now();
    if (method == Method::kSoot) {
      rec.result = soot_solve(inst.y, inst.x0, inst.h0, params, inst.g1, inst.g2,
                              cfg.soot.solver_config());
    } else {
      rec.result = baseline_solve(inst.y, inst.x0, inst.h0, cfg.baseline.baseline_config(),
                                  inst.g1, inst.g2, params)
                       .solve;
    }
    rec.time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
    return rec;
  }
  rec.termination = rec.result.termination;
  rec.outer_iterations = rec.result.outer_iterations;
  if (rec.termination == Termination::kDescentViolation) {
    rec.failed = true;
    rec.error = "descent violation at outer iteration " + std::to_string(rec.outer_iterations);
  }

  Vec x_hat = rec.result.x_hat.values();
  Vec h_hat = rec.result.h_hat.values();
  if (cfg.align_scale) {
    const double xx = squared_norm(x_hat);
    if (xx > 0.0) {
      const double c = dot(x_hat, inst.x_true) / xx;
      if (c != 0.0) {
        for (auto& v : x_hat) v *= c;
        for (auto& v : h_hat) v /= c;
      }
    }
  }
  rec.signal = error_metrics(inst.x_true, x_hat);
  rec.kernel = error_metrics(inst.h_true, h_hat);
  rec.signal_raw = raw_error_norms(inst.x_true, x_hat);
  rec.kernel_raw = raw_error_norms(inst.h_true, h_hat);
  return rec;
}

namespace {

MetricsRow aggregate(double sigma, Method method, const std::vector<const RunRecord*>& runs) {
  MetricsRow row;
  row.sigma = sigma;
  row.method = to_string(method);
  std::vector<double> s2, s1, k2, k1, o2, o1, t;
  for (const RunRecord* r : runs) {
    if (r->failed) {
      ++row.failures;
      continue;
    }
    s2.push_back(r->signal.l2);
    s1.push_back(r->signal.l1);
    k2.push_back(r->kernel.l2);
    k1.push_back(r->kernel.l1);
    o2.push_back(r->obs.l2);
    o1.push_back(r->obs.l1);
    t.push_back(r->time_s);
  }
  row.runs = static_cast<int>(s2.size());
  std::tie(row.signal.l2, row.signal_std.l2) = mean_std(s2);
  std::tie(row.signal.l1, row.signal_std.l1) = mean_std(s1);
  std::tie(row.kernel.l2, row.kernel_std.l2) = mean_std(k2);
  std::tie(row.kernel.l1, row.kernel_std.l1) = mean_std(k1);
  std::tie(row.obs.l2, row.obs_std.l2) = mean_std(o2);
  std::tie(row.obs.l1, row.obs_std.l1) = mean_std(o1);
  std::tie(row.time_s, row.time_std) = mean_std(t);
  return row;
}

}  // namespace

TableResult run_table(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n_sigma = cfg.sigma_list.size();
  const auto n_real = static_cast<std::size_t>(cfg.realizations);
  constexpr Method kMethods[] = {Method::kSoot, Method::kBaseline};

  // Task index = (sigma, method, realization), row-major.
  const std::size_t count = n_sigma * 2 * n_real;
  std::vector<RunRecord> runs(count);
  parallel_for(count, cfg.threads, [&](std::size_t task) {
    const std::size_t si = task / (2 * n_real);
    const std::size_t mi = (task / n_real) % 2;
    const std::size_t ri = task % n_real;
    const Instance inst =
        make_instance(cfg, cfg.sigma_list[si], realization_seed(cfg.seed, si, ri));
    runs[task] = run_method(inst, kMethods[mi], cfg);
    runs[task].realization = static_cast<int>(ri);
  });

  TableResult out;
  for (std::size_t si = 0; si < n_sigma; ++si) {
    for (std::size_t mi = 0; mi < 2; ++mi) {
      std::vector<const RunRecord*> group;
      for (std::size_t ri = 0; ri < n_real; ++ri) group.push_back(&runs[(si * 2 + mi) * n_real + ri]);
      out.rows.push_back(aggregate(cfg.sigma_list[si], kMethods[mi], group));
    }
  }
  out.runs = std::move(runs);
  return out;
}

InnerLoopResult run_innerloop_study(const ExperimentConfig& cfg, const std::vector<int>& j_values) {
  cfg.validate();
  if (j_values.empty()) throw ConfigError("innerloop study: no J values");
  const auto n_real = static_cast<std::size_t>(cfg.innerloop_realizations);
  const std::size_t count = j_values.size() * n_real;
  std::vector<RunRecord> runs(count);
  parallel_for(count, cfg.threads, [&](std::size_t task) {
    const std::size_t ji = task / n_real;
    const std::size_t ri = task % n_real;
    ExperimentConfig local = cfg;
    local.soot.inner_x = j_values[ji];
    local.soot.max_outer = cfg.innerloop_max_outer;
    const Instance inst = make_instance(local, cfg.innerloop_sigma,
                                        realization_seed(cfg.seed, kInnerLoopStream, ri));
    runs[task] = run_method(inst, Method::kSoot, local);
    runs[task].realization = static_cast<int>(ri);
  });

  InnerLoopResult out;
  for (std::size_t ji = 0; ji < j_values.size(); ++ji) {
    InnerLoopRow row;
    row.j = j_values[ji];
    std::vector<double> t, l1, l2, outer;
    for (std::size_t ri = 0; ri < n_real; ++ri) {
      const RunRecord& r = runs[ji * n_real + ri];
      if (r.failed) {
        ++row.failures;
        continue;
      }
      t.push_back(r.time_s);
      l1.push_back(r.signal.l1);
      l2.push_back(r.signal.l2);
      outer.push_back(r.outer_iterations);
      if (r.termination == Termination::kConverged) ++row.converged;
      if (r.termination == Termination::kMaxOuter) ++row.max_outer;
    }
    std::tie(row.mean_time_s, row.std_time_s) = mean_std(t);
    row.mean_l1_err = mean_std(l1).first;
    row.mean_l2_err = mean_std(l2).first;
    row.mean_outer = mean_std(outer).first;
    out.rows.push_back(row);
  }
  out.runs = std::move(runs);
  return out;
}

namespace {

bool better(const GridCell& a, const GridCell& b) {
  if (a.mean_l1 != b.mean_l1) return a.mean_l1 < b.mean_l1;
  return a.mean_l2 < b.mean_l2;
}

GridResult run_grid(const ExperimentConfig& cfg, std::vector<GridCell> cells, Method method) {
  const auto n_real = static_cast<std::size_t>(cfg.grid.realizations);
  std::vector<Instance> instances;
  for (std::size_t ri = 0; ri < n_real; ++ri) {
    instances.push_back(make_instance(cfg, cfg.grid.sigma, realization_seed(cfg.seed, kGridStream, ri)));
  }
  parallel_for(cells.size(), cfg.threads, [&](std::size_t ci) {
    GridCell& cell = cells[ci];
    ExperimentConfig local = cfg;
    if (method == Method::kSoot) {
      local.soot.lambda_rel = cell.lambda_rel;
      local.soot.lambda_abs.reset();
      local.soot.alpha = cell.alpha;
      local.soot.beta = cell.beta;
      local.soot.eta = cell.eta;
    } else {
      local.baseline.lambda_b = cell.lambda_rel;
    }
    std::vector<double> l1, l2;
    for (const Instance& inst : instances) {
      const RunRecord r = run_method(inst, method, local);
      if (r.failed) {
        ++cell.failures;
        continue;
      }
      l1.push_back(r.signal.l1);
      l2.push_back(r.signal.l2);
    }
    const double inf = std::numeric_limits<double>::infinity();
    cell.mean_l1 = l1.empty() ? inf : mean_std(l1).first;
    cell.mean_l2 = l2.empty() ? inf : mean_std(l2).first;
  });

  GridResult out;
  out.cells = std::move(cells);
  for (std::size_t i = 1; i < out.cells.size(); ++i) {
    if (better(out.cells[i], out.cells[out.best])) out.best = i;
  }
  return out;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

GridResult grid_search(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<GridCell> cells;
  for (double l : sorted(cfg.grid.lambda_rel)) {
    for (double a : sorted(cfg.grid.alpha)) {
      for (double b : sorted(cfg.grid.beta)) {
        for (double e : sorted(cfg.grid.eta)) cells.push_back({l, a, b, e});
      }
    }
  }
  if (cells.empty()) throw ConfigError("grid_search: empty grid");
  return run_grid(cfg, std::move(cells), Method::kSoot);
}

GridResult grid_search_baseline(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<GridCell> cells;
  for (double l : sorted(cfg.grid.lambda_b)) cells.push_back({l, 0.0, 0.0, 0.0});
  if (cells.empty()) throw ConfigError("grid_search_baseline: empty grid");
  return run_grid(cfg, std::move(cells), Method::kBaseline);
}

void apply_best(const GridResult& grid, SootSettings& soot) {
  const GridCell& c = grid.cells.at(grid.best);
  soot.lambda_rel = c.lambda_rel;
  soot.lambda_abs.reset();
  soot.alpha = c.alpha;
  soot.beta = c.beta;
  soot.eta = c.eta;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
  const auto old = out.precision(10);
  out << "sigma,method,realization,noise_seed,inner_x,failed,termination,outer_iterations,"
         "l2_signal,l1_signal,l2_kernel,l1_kernel,l2_obs,l1_obs,"
         "raw_l2_signal,raw_l1_signal,raw_l2_kernel,raw_l1_kernel,raw_l2_obs,raw_l1_obs,time_s\n";
  for (const auto& r : runs) {
    out << r.sigma << ',' << to_string(r.method) << ',' << r.realization << ',' << r.noise_seed << ','
        << r.inner_x << ',' << (r.failed ? 1 : 0) << ','
        << (r.failed && r.error.rfind("descent", 0) != 0 ? "error" : to_string(r.termination)) << ','
        << r.outer_iterations << ',' << r.signal.l2 << ',' << r.signal.l1 << ',' << r.kernel.l2 << ','
        << r.kernel.l1 << ',' << r.obs.l2 << ',' << r.obs.l1 << ',' << r.signal_raw.l2 << ','
        << r.signal_raw.l1 << ',' << r.kernel_raw.l2 << ',' << r.kernel_raw.l1 << ','
        << r.obs_raw.l2 << ',' << r.obs_raw.l1 << ',' << r.time_s << '\n';
  }
  out.precision(old);
}

void write_innerloop_csv(std::ostream& out, const std::vector<InnerLoopRow>& rows) {
  const auto old = out.precision(10);
  out << "J,mean_time_s,std_time_s,mean_l1_err,mean_l2_err,mean_outer,converged,max_outer,failures\n";
  for (const auto& r : rows) {
    out << r.j << ',' << r.mean_time_s << ',' << r.std_time_s << ',' << r.mean_l1_err << ','
        << r.mean_l2_err << ',' << r.mean_outer << ',' << r.converged << ',' << r.max_outer << ','
        << r.failures << '\n';
  }
  out.precision(old);
}

void write_grid_csv(std::ostream& out, const GridResult& grid, Method method) {
  const auto old = out.precision(10);
  if (method == Method::kSoot) {
    out << "lambda_rel,alpha,beta,eta,mean_l1_signal,mean_l2_signal,failures,best\n";
  } else {
    out << "lambda_b,mean_l1_signal,mean_l2_signal,failures,best\n";
  }
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& c = grid.cells[i];
    out << c.lambda_rel << ',';
    if (method == Method::kSoot) out << c.alpha << ',' << c.beta << ',' << c.eta << ',';
    out << c.mean_l1 << ',' << c.mean_l2 << ',' << c.failures << ',' << (i == grid.best ? 1 : 0)
        << '\n';
  }
  out.precision(old);
}

nlohmann::json run_manifest(const ExperimentConfig& cfg, const std::string& command,
                            const std::vector<RunRecord>& runs) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& r : runs) {
    seeds.push_back({{"sigma", r.sigma},
                     {"method", to_string(r.method)},
                     {"realization", r.realization},
                     {"noise_seed", r.noise_seed},
                     {"inner_x", r.inner_x}});
  }
  return {{"command", command},
          {"config", cfg},
          {"reflectivity_seed", cfg.seed},
          {"runs", seeds}};
}

}  // namespace soot::bench
