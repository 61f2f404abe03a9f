// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// exit status is nonzero if any selected criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "soot/bench/experiment.hpp"
#include "soot/bench/synthetic.hpp"
#include "soot/convolution.hpp"
#include "soot/penalty.hpp"
#include "soot/prox.hpp"
#include "soot/solver.hpp"

using namespace soot;
using namespace soot::bench;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

SootParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  return {u(rng), 0.1 * u(rng), 0.1 * u(rng), 0.2 * u(rng)};
}

// 1: analytic gradients vs central differences.
Outcome gradients() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 31;
    const std::size_t s = 1 + rng() % std::min<std::size_t>(n, 9);
    const SootParams p = random_params(rng);
    const Vec x = oracle::random_vec(rng, n), h = oracle::random_vec(rng, s), y = oracle::random_vec(rng, n);
    auto rel = [](const Vec& a, const Vec& b) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) num += (a[i] - b[i]) * (a[i] - b[i]), den += b[i] * b[i];
      return std::sqrt(num) / std::max(std::sqrt(den), 1e-8);
    };
    worst = std::max(worst, rel(grad_phi(x, p), oracle::fd_gradient([&](const Vec& v) { return phi(v, p); }, x)));
    worst = std::max(worst, rel(grad1_f(x, h, y, p),
                                oracle::fd_gradient([&](const Vec& v) { return smooth_objective(v, h, y, p); }, x)));
    worst = std::max(worst, rel(grad2_f(x, h, y),
                                oracle::fd_gradient([&](const Vec& v) { return data_fidelity(x, v, y); }, h)));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-5 && t < 10.0, "max relative error " + fmt(worst) + ", " + fmt(t) + " s"};
}

// 2: quadratic majorants in x (A1) and h (A2).
Outcome majorants() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  double worst = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 29;
    const std::size_t s = 1 + rng() % std::min<std::size_t>(n, 9);
    const SootParams p = random_params(rng);
    const Vec x = oracle::random_vec(rng, n), x2 = oracle::random_vec(rng, n);
    const Vec h = oracle::random_vec(rng, s), h2 = oracle::random_vec(rng, s);
    const Vec y = oracle::random_vec(rng, n);

    const DiagMetric u = metric_A1(x, h, p);
    const Vec g1 = grad1_f(x, h, y, p);
    double q = smooth_objective(x, h, y, p);
    for (std::size_t i = 0; i < n; ++i) q += g1[i] * (x2[i] - x[i]) + 0.5 * u.diag[i] * std::pow(x2[i] - x[i], 2);
    worst = std::min(worst, q - smooth_objective(x2, h, y, p));

    const double a2 = metric_A2(x, s);
    const Vec g2 = grad2_f(x, h, y);
    double q2 = smooth_objective(x, h, y, p);
    for (std::size_t i = 0; i < s; ++i) q2 += g2[i] * (h2[i] - h[i]) + 0.5 * a2 * std::pow(h2[i] - h[i], 2);
    worst = std::min(worst, q2 - smooth_objective(x, h2, y, p));
  }
  const double t = seconds_since(t0);
  return {worst >= -1e-10 && t < 10.0, "min slack " + fmt(worst) + ", " + fmt(t) + " s"};
}

// 3: Hessian of phi2 at ||x|| = eta / sqrt(3) against 9 lambda / (8 eta^2).
Outcome lipschitz_phi2() {
  const SootParams p{1.0, 0.1, 0.1, 1.0};
  const double bound = lipschitz_phi2_bound(p);
  auto f = [&](const Vec& v) { return phi2(v, p); };
  const double u = p.eta / std::sqrt(3.0);
  const Vec x{u / std::sqrt(2.0), u / std::sqrt(2.0)};
  const double at = oracle::spectral_norm_sym(oracle::fd_hessian(f, x, 1e-4));
  const double rel = std::abs(at - bound) / bound;

  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    worst = std::max(worst, oracle::spectral_norm_sym(oracle::fd_hessian(f, oracle::random_vec(rng, 2, -2, 2), 1e-4)));
  }
  return {rel <= 1e-4 && worst <= bound + 1e-6,
          "norm at eta/sqrt(3) " + fmt(at) + " vs bound " + fmt(bound) + " (rel " + fmt(rel) +
              "), max over 50 random points " + fmt(worst)};
}

// 4: monotone descent on seeded desk-scale instances.
Outcome descent() {
  const auto t0 = Clock::now();
  const std::vector<double> sigmas{0.01, 0.02, 0.03};
  int bad = 0;
  double worst_rise = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    ExperimentConfig cfg;
    cfg.seed = 4000 + i;
    const Instance inst = make_instance(cfg, sigmas[i % 3], realization_seed(cfg.seed, i % 3, i));
    const SolveResult r = soot_solve(inst.y, inst.x0, inst.h0, cfg.soot.params_for(inst.y), inst.g1, inst.g2,
                                     cfg.soot.solver_config());
    const auto& rows = r.trace.rows;
    for (std::size_t k = 1; k < rows.size(); ++k) worst_rise = std::max(worst_rise, rows[k].F - rows[k - 1].F);
    if (!r.trace.nonincreasing(1e-9) || r.termination == Termination::kDescentViolation) ++bad;
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 300.0, std::to_string(bad) + "/20 traces not monotone, largest step change " +
                                     fmt(worst_rise) + ", " + fmt(t) + " s"};
}

// 5: stopping behavior.
Outcome stopping() {
  ExperimentConfig cfg;
  cfg.realizations = 3;
  const TableResult table = run_table(cfg);
  int unexplained = 0, converged = 0, max_outer = 0;
  for (const auto& r : table.runs) {
    if (r.failed) ++unexplained;
    else if (r.termination == Termination::kConverged) ++converged;
    else if (r.termination == Termination::kMaxOuter) ++max_outer;
    else ++unexplained;
  }

  int slow = 0;
  int worst_outer[2] = {0, 0};
  for (int i = 0; i < 5; ++i) {
    ExperimentConfig c;
    c.seed = 5000 + i;
    Instance inst = make_instance(c, 0.0, 0);
    inst.x0 = inst.x_true;
    inst.h0 = inst.h_true;
    for (Method m : {Method::kSoot, Method::kBaseline}) {
      const RunRecord r = run_method(inst, m, c);
      int& w = worst_outer[m == Method::kSoot ? 0 : 1];
      w = std::max(w, r.outer_iterations);
      if (r.failed || r.termination != Termination::kConverged || r.outer_iterations > 10) ++slow;
    }
  }
  return {unexplained == 0 && slow == 0,
          "bench runs: " + std::to_string(converged) + " converged, " + std::to_string(max_outer) +
              " max_outer, " + std::to_string(unexplained) + " other; truth-initialized: " + std::to_string(slow) +
              "/10 over 10 outer iterations (max soot " + std::to_string(worst_outer[0]) +
              ", baseline " + std::to_string(worst_outer[1]) + ")"};
}

// 6: the comparison table pattern.
Outcome table_pattern() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.realizations = 30;
  const TableResult t = run_table(cfg);
  bool a = true, b = true, c = true;
  std::ostringstream d;
  double prev_obs = -1.0;
  for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2) {
    const MetricsRow& s = t.rows[i];
    const MetricsRow& bl = t.rows[i + 1];
    a = a && s.signal.l2 * 2 <= s.obs.l2 && bl.signal.l2 * 2 <= bl.obs.l2;
    b = b && s.signal.l1 <= bl.signal.l1;
    c = c && s.obs.l2 > prev_obs;
    prev_obs = s.obs.l2;
    d << "sigma " << s.sigma << ": obs l2 " << fmt(s.obs.l2) << ", l2 soot/baseline " << fmt(s.signal.l2) << "/"
      << fmt(bl.signal.l2) << ", l1 soot/baseline " << fmt(s.signal.l1) << "/" << fmt(bl.signal.l1) << "; ";
  }
  const double secs = seconds_since(t0);
  d << "(a) " << (a ? "ok" : "no") << " (b) " << (b ? "ok" : "no") << " (c) " << (c ? "ok" : "no") << ", "
    << fmt(secs) << " s";
  return {a && b && c && secs < 1800.0, d.str()};
}

// 7: inner-loop study.
Outcome inner_loops() {
  ExperimentConfig cfg;
  cfg.innerloop_realizations = 10;
  cfg.innerloop_sigma = 0.03;
  const InnerLoopResult r = run_innerloop_study(cfg, {1, 5, 15, 40, 71, 120, 200});
  double lo = INFINITY, hi = 0.0, t1 = 0.0, t71 = 0.0;
  std::ostringstream d;
  for (const auto& row : r.rows) {
    lo = std::min(lo, row.mean_l1_err);
    hi = std::max(hi, row.mean_l1_err);
    if (row.j == 1) t1 = row.mean_time_s;
    if (row.j == 71) t71 = row.mean_time_s;
    d << "J=" << row.j << " " << fmt(row.mean_time_s) << "s/" << fmt(row.mean_l1_err) << " ";
  }
  const double ratio = hi / lo;
  d << "; l1 ratio " << fmt(ratio) << ", time J=71 " << fmt(t71) << " s vs J=1 " << fmt(t1) << " s";
  return {ratio < 1.5 && t71 <= t1, d.str()};
}

// 8: projection oracle, idempotence and dominance.
Outcome projection() {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_real_distribution<double> u(0.1, 1.5);
    const double lo = -u(rng), hi = u(rng), radius = u(rng);
    const KernelConstraint c(lo, hi, radius);
    const Vec z = oracle::random_vec(rng, 3, -3, 3);
    worst = std::max(worst, distance(project_box_ball(z, c), oracle::project_box_ball_enumerate(z, lo, hi, radius)));
  }

  int violations = 0;
  for (std::size_t s : {3, 8, 41, 200}) {
    const KernelConstraint c(-0.3, 1.0, 0.9);
    for (int i = 0; i < 1000; ++i) {
      Vec w = oracle::random_vec(rng, s, -0.3, 1.0);
      w = project_ball(w, 0.9);  // feasible: the box contains 0
      const Vec z = oracle::random_vec(rng, s, -2, 2);
      const Vec pz = project_box_ball(z, c);
      if (distance(project_box_ball(pz, c), pz) > 1e-12) ++violations;
      if (distance(z, pz) > distance(z, w) + 1e-12) ++violations;
    }
  }
  return {worst <= 1e-6 && violations == 0,
          "max distance to enumeration oracle " + fmt(worst) + ", " + std::to_string(violations) +
              " idempotence/dominance violations"};
}

// 9: PALM special case against a hand-written scalar-step loop.
Outcome palm() {
  ExperimentConfig cfg;
  const Instance inst = make_instance(cfg, 0.03, realization_seed(cfg.seed, 2, 0));
  const SootParams p = cfg.soot.params_for(inst.y);
  SolverConfig sc = cfg.soot.solver_config();
  sc.inner_x = 1;
  sc.inner_h = 1;
  sc.max_outer = 10;
  sc.stop_tol = 0.0;
  sc.metric_mode = MetricMode::kScalarLipschitz;
  sc.record_iterates = true;
  const SolveResult r = soot_solve(inst.y, inst.x0, inst.h0, p, inst.g1, inst.g2, sc);
  if (r.trace.x_iterates.size() != 11) return {false, "solver stopped early"};

  Vec x = inst.x0.values(), h = inst.h0.values(), warm_h, warm_x;
  double worst = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double lx = op_norm_sq_bound(h, x.size(), &warm_h) + 9 * p.lambda / (8 * p.eta * p.eta) +
                      p.lambda / (p.beta * p.alpha);
    const Vec gx = grad1_f(x, h, inst.y, p);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i] - sc.step_x / lx * gx[i], inst.g1.lo, inst.g1.hi);
    }
    const double lh = std::max(kernel_op_norm_sq_bound(x, h.size(), &warm_x), kMetricFloor);
    const Vec gh = grad2_f(x, h, inst.y);
    Vec hs(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hs[i] = h[i] - sc.step_h / lh * gh[i];
    h = project_box_ball(hs, inst.g2);
    worst = std::max({worst, distance(x, r.trace.x_iterates[k]), distance(h, r.trace.h_iterates[k])});
  }
  return {worst <= 1e-12, "max per-iterate distance " + fmt(worst)};
}

// 10: two bench runs with one master seed give identical metrics.
std::string strip_time(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  std::string line, out;
  std::size_t time_col = std::string::npos;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (time_col == std::string::npos) {
      time_col = std::find(cells.begin(), cells.end(), "time_s") - cells.begin();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != time_col) out += cells[i] + ",";
    }
    out += "\n";
  }
  return out;
}

Outcome bench_determinism() {
  namespace fs = std::filesystem;
  const fs::path work = fs::temp_directory_path() / "soot_acceptance_bench";
  fs::remove_all(work);
  int rc = 0;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string("\"") + SOOT_CLI_PATH + "\" bench --seed 7 --realizations 3 --out \"" +
                            (work / run).string() + "\" > /dev/null";
    rc |= std::system(cmd.c_str());
  }
  if (rc != 0) return {false, "bench exited with status " + std::to_string(rc)};
  const std::string a = strip_time(work / "a" / "metrics.csv");
  const std::string b = strip_time(work / "b" / "metrics.csv");
  const bool same = !a.empty() && a == b;
  fs::remove_all(work);
  return {same, same ? "metrics identical apart from time_s" : "metrics differ"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"gradients match central differences", gradients},
    {"quadratic majorants", majorants},
    {"Lipschitz constant of grad phi2", lipschitz_phi2},
    {"monotone descent at desk scale", descent},
    {"stopping behavior", stopping},
    {"comparison table pattern", table_pattern},
    {"inner-loop study", inner_loops},
    {"box-ball projection", projection},
    {"PALM special case", palm},
    {"bench determinism", bench_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> ids;
  app.add_option("--criterion", ids, "criterion ids (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) {
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  }

  bool all = true;
  for (int id : ids) {
    const auto& [name, fn] = kCriteria[id - 1];
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
