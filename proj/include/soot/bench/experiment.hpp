#pragma once

// Experiment orchestration: the noise-level comparison table, the inner-loop
// timing study and the hyperparameter grid search.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "soot/bench/config.hpp"
#include "soot/bench/metrics.hpp"
#include "soot/signal.hpp"
#include "soot/solver.hpp"

namespace soot::bench {

enum class Method { kSoot, kBaseline };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// One synthetic problem: ground truth, observation, constraint sets and the
/// shared starting point.
struct Instance {
  Signal x_true;
  Kernel h_true;
  Signal y;
  BoxConstraint g1;
  KernelConstraint g2;
  Signal x0;
  Kernel h0;
  double sigma = 0.0;
  std::uint64_t noise_seed = 0;
};

/// The reflectivity comes from cfg.seed and is shared by every realization;
/// only the noise depends on noise_seed.
Instance make_instance(const ExperimentConfig& cfg, double sigma, std::uint64_t noise_seed);

/// Seed streams for studies other than the table.
inline constexpr std::size_t kInnerLoopStream = 0x1F00;
inline constexpr std::size_t kGridStream = 0x2F00;

struct RunRecord {
  Method method = Method::kSoot;
  double sigma = 0.0;
  int realization = 0;
  std::uint64_t noise_seed = 0;
  int inner_x = 0;
  bool failed = false;
  std::string error;
  Termination termination = Termination::kMaxOuter;
  int outer_iterations = 0;
  ErrorPair signal, kernel, obs;
  ErrorPair signal_raw, kernel_raw, obs_raw;
  double time_s = 0.0;
  SolveResult result;
};

/// Solve one instance with one method. Solver exceptions and descent
/// violations are reported through RunRecord::failed, never thrown.
RunRecord run_method(const Instance& inst, Method method, const ExperimentConfig& cfg);

struct TableResult {
  std::vector<MetricsRow> rows;  // sorted by sigma, then soot before baseline
  std::vector<RunRecord> runs;   // sorted by sigma, method, realization
};

TableResult run_table(const ExperimentConfig& cfg);

struct InnerLoopRow {
  int j = 0;
  double mean_time_s = 0.0;
  double std_time_s = 0.0;
  double mean_l1_err = 0.0;
  double mean_l2_err = 0.0;
  double mean_outer = 0.0;
  int converged = 0;
  int max_outer = 0;
  int failures = 0;
};

struct InnerLoopResult {
  std::vector<InnerLoopRow> rows;
  std::vector<RunRecord> runs;
};

InnerLoopResult run_innerloop_study(const ExperimentConfig& cfg, const std::vector<int>& j_values);

struct GridCell {
  double lambda_rel = 0.0;  // lambda_b for the baseline grid
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  double mean_l1 = 0.0;
  double mean_l2 = 0.0;
  int failures = 0;
};

struct GridResult {
  std::vector<GridCell> cells;  // lexicographic parameter order
  std::size_t best = 0;
};

/// Exhaustive search over cfg.grid for the SOOT penalty parameters. Minimizes
/// the mean l1 signal error over cfg.grid.realizations noise draws at
/// cfg.grid.sigma; ties go to the smaller l2 error, then to the earlier cell.
GridResult grid_search(const ExperimentConfig& cfg);

/// Same search over cfg.grid.lambda_b for the baseline.
GridResult grid_search_baseline(const ExperimentConfig& cfg);

/// Apply the best cell of a SOOT grid to cfg.soot.
void apply_best(const GridResult& grid, SootSettings& soot);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_innerloop_csv(std::ostream& out, const std::vector<InnerLoopRow>& rows);
void write_grid_csv(std::ostream& out, const GridResult& grid, Method method);

/// Fully resolved configuration plus the seeds actually used.
nlohmann::json run_manifest(const ExperimentConfig& cfg, const std::string& command,
                            const std::vector<RunRecord>& runs);

}  // namespace soot::bench
