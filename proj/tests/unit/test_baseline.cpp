#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "soot/baseline.hpp"
#include "soot/convolution.hpp"

using namespace soot;

TEST_CASE("soft_threshold") {
  const Vec z{2.0, -0.5};
  CHECK(soft_threshold(z, 0.0) == z);
  CHECK(soft_threshold(z, 1.0) == Vec{1.0, 0.0});

  SUBCASE("prox oracle on a 1-D grid") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0), ut(0.0, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
      const double zi = u(rng), t = ut(rng);
      double best_w = 0.0, best = INFINITY;
      for (int g = -400000; g <= 400000; ++g) {
        const double w = g * 1e-5;
        const double v = t * std::abs(w) + 0.5 * (w - zi) * (w - zi);
        if (v < best) best = v, best_w = w;
      }
      CHECK(std::abs(soft_threshold(Vec{zi}, t)[0] - best_w) <= 1e-5);
    }
  }

  SUBCASE("1-Lipschitz") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const Vec a = oracle::random_vec(rng, 10, -2, 2), b = oracle::random_vec(rng, 10, -2, 2);
      CHECK(distance(soft_threshold(a, 0.7), soft_threshold(b, 0.7)) <= distance(a, b) + 1e-15);
    }
  }
}

namespace {

struct Problem {
  Vec x_true, h_true, y;
  BoxConstraint g1{-1.0, 1.0};
  KernelConstraint g2;
};

Problem make_problem(std::size_t n, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Problem p;
  p.x_true.assign(n, 0.0);
  for (std::size_t i = 0; i < n; i += 3) p.x_true[i] = (i % 2 ? -0.7 : 0.9);
  p.h_true = {0.3, 1.0, 0.4};
  p.y = convolve(p.h_true, p.x_true);
  std::normal_distribution<double> w(0.0, noise);
  for (auto& v : p.y) v += w(rng);
  p.g2 = KernelConstraint(0.0, 1.0, 1.2 * norm2(p.h_true));
  return p;
}

const SootParams kTraceParams{0.1, 0.05, 0.1, 0.3};

}  // namespace

TEST_CASE("baseline_solve: noiseless, truth-initialized") {
  const Problem p = make_problem(24, 0.0, 1);
  BaselineConfig cfg;
  cfg.lambda_b = 1e-9;
  const BaselineResult r = baseline_solve(p.y, p.x_true, p.h_true, cfg, p.g1, p.g2, kTraceParams);
  CHECK(r.solve.termination == Termination::kConverged);
  CHECK(r.solve.outer_iterations <= 3);
}

TEST_CASE("baseline_solve: lambda_b = 0 with the kernel fixed is box-constrained least squares") {
  const Problem p = make_problem(8, 0.3, 2);
  BaselineConfig cfg;
  cfg.lambda_b = 0.0;
  cfg.fix_kernel = true;
  cfg.ista_iters = 50;
  cfg.outer_iters = 200;
  cfg.stop_tol = 1e-300;
  const Vec x0(8, 0.0);
  const BaselineResult r = baseline_solve(p.y, x0, p.h_true, cfg, p.g1, p.g2, kTraceParams);
  CHECK(r.solve.h_hat.values() == p.h_true);

  // Dense projected gradient on the same problem.
  const Eigen::MatrixXd H = oracle::conv_matrix(p.h_true, 8);
  const Eigen::VectorXd y = oracle::as_eigen(p.y);
  const double step = 1.0 / oracle::sigma_max_sq(H);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(8);
  for (int it = 0; it < 10000; ++it) {
    x -= step * (H.transpose() * (H * x - y));
    x = x.cwiseMax(-1.0).cwiseMin(1.0);
  }
  CHECK(distance(r.solve.x_hat.values(), oracle::as_vec(x)) <= 1e-6);
}

TEST_CASE("baseline_solve: surrogate descent within each x-phase, feasibility") {
  const Problem p = make_problem(8, 0.1, 3);
  BaselineConfig cfg;
  cfg.lambda_b = 0.3;
  cfg.ista_iters = 20;
  cfg.outer_iters = 30;
  cfg.record_surrogate = true;
  const Vec x0(8, 0.2);
  const Vec h0{0.2, 0.5, 0.2};
  const BaselineResult r = baseline_solve(p.y, x0, h0, cfg, p.g1, p.g2, kTraceParams);
  REQUIRE(!r.surrogate.empty());
  for (const Vec& phase : r.surrogate) {
    REQUIRE(phase.size() == 21);
    for (std::size_t i = 1; i < phase.size(); ++i) CHECK(phase[i] <= phase[i - 1] + 1e-9);
  }
  CHECK(p.g1.contains(r.solve.x_hat.values()));
  CHECK(p.g2.contains(r.solve.h_hat.values(), 1e-12));
  for (const auto& row : r.solve.trace.rows) CHECK(std::isfinite(row.F));
}

TEST_CASE("baseline_solve: errors") {
  const Problem p = make_problem(8, 0.0, 4);
  BaselineConfig cfg;
  Vec bad = p.x_true;
  bad[0] = -3.0;
  CHECK_THROWS_AS(baseline_solve(p.y, bad, p.h_true, cfg, p.g1, p.g2, kTraceParams), PreconditionError);
  CHECK_THROWS_AS(baseline_solve(p.y, p.x_true, Vec{2, 2, 2}, cfg, p.g1, p.g2, kTraceParams),
                  PreconditionError);
  cfg.step_scale = 1.5;
  CHECK_THROWS_AS(baseline_solve(p.y, p.x_true, p.h_true, cfg, p.g1, p.g2, kTraceParams), ConfigError);
  cfg = BaselineConfig{};
  cfg.lambda_b = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
