#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "soot/prox.hpp"

using namespace soot;

namespace {

KernelConstraint random_constraint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  return KernelConstraint(-u(rng), u(rng), u(rng));
}

Vec random_feasible(std::mt19937_64& rng, std::size_t s, const KernelConstraint& c) {
  Vec w = oracle::random_vec(rng, s, c.lo, c.hi);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  const double nw = norm2(w);
  if (nw > c.radius) {
    const double scale = c.radius / nw * shrink(rng);
    for (auto& v : w) v *= scale;
  }
  return w;
}

}  // namespace

TEST_CASE("prox_box_diag_metric is the clip for any positive metric") {
  const BoxConstraint box(-1.0, 1.0);
  const DiagMetric metric{{3.0, 0.2}, 0.2, 3.0};
  CHECK(prox_box_diag_metric(Vec{2.0, -3.0}, box, metric) == Vec{1.0, -1.0});
  CHECK(prox_box_diag_metric(Vec{0.5, -0.25}, box, metric) == Vec{0.5, -0.25});
  CHECK_THROWS_AS(prox_box_diag_metric(Vec{0.0, 0.0}, box, DiagMetric{{1.0, 0.0}, 0.0, 1.0}),
                  PreconditionError);
  CHECK_THROWS_AS(prox_box_diag_metric(Vec{0.0}, box, metric), ConfigError);
}

TEST_CASE("prox_box_diag_metric matches a dense grid search on N = 3") {
  std::mt19937_64 rng(1);
  const BoxConstraint box(-0.6, 0.9);
  const int grid = 101;
  const double step = (box.hi - box.lo) / (grid - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec z = oracle::random_vec(rng, 3, -2.0, 2.0);
    const Vec d = oracle::random_vec(rng, 3, 0.1, 5.0);
    auto cost = [&](double a, double b, double c) {
      return 0.5 * (d[0] * (a - z[0]) * (a - z[0]) + d[1] * (b - z[1]) * (b - z[1]) +
                    d[2] * (c - z[2]) * (c - z[2]));
    };
    double best = std::numeric_limits<double>::infinity();
    Vec arg(3);
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        for (int k = 0; k < grid; ++k) {
          const double a = box.lo + i * step, b = box.lo + j * step, c = box.lo + k * step;
          const double v = cost(a, b, c);
          if (v < best) {
            best = v;
            arg = {a, b, c};
          }
        }
      }
    }
    const Vec p = prox_box_diag_metric(z, box, DiagMetric{d, 0.1, 5.0});
    CHECK(cost(p[0], p[1], p[2]) <= best + 1e-15);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(p[i] - arg[i]) <= step);
  }
}

TEST_CASE("project_ball") {
  CHECK(project_ball(Vec{0.3, 0.4}, 1.0) == Vec{0.3, 0.4});
  const Vec p = project_ball(Vec{3.0, 4.0}, 1.0);
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec z = oracle::random_vec(rng, 1 + rng() % 10, -3.0, 3.0);
    const Vec once = project_ball(z, 1.5);
    const Vec twice = project_ball(once, 1.5);
    CHECK(oracle::rel_err(twice, once) <= 1e-15);
  }
}

TEST_CASE("KernelConstraint validation") {
  CHECK_THROWS_AS(KernelConstraint(1.0, -1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(KernelConstraint(-1.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(KernelConstraint(2.0, 3.0, 1.0), ConfigError);
  // Nonempty per coordinate but empty for S = 4: ||(0.6, 0.6, 0.6, 0.6)|| = 1.2 > 1.
  const KernelConstraint c(0.6, 1.0, 1.0);
  CHECK_THROWS_AS(project_box_ball(Vec(4, 2.0), c), ConfigError);
}

TEST_CASE("project_box_ball: trivial regimes") {
  const KernelConstraint c(-0.5, 0.8, 1.0);
  const Vec inside{0.1, -0.2, 0.3};
  CHECK(project_box_ball(inside, c) == inside);

  const KernelConstraint wide(-100.0, 100.0, 1.0);
  const Vec z{3.0, 4.0, 0.0};
  CHECK(oracle::rel_err(project_box_ball(z, wide), project_ball(z, 1.0)) <= 1e-14);
}

TEST_CASE("project_box_ball matches the active-set enumeration oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + rng() % 4;
    const KernelConstraint c = random_constraint(rng);
    const Vec z = oracle::random_vec(rng, s, -2.0, 2.0);
    const Vec p = project_box_ball(z, c);
    CHECK(c.contains(p, 1e-12));
    CHECK(oracle::rel_err(p, oracle::project_box_ball_enumerate(z, c.lo, c.hi, c.radius)) <= 1e-9);
  }
}

TEST_CASE("Dykstra reference agrees with the exact projection") {
  std::mt19937_64 rng(4);
  DykstraOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 1000000;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t s = 1 + rng() % 12;
    const KernelConstraint c = random_constraint(rng);
    const Vec z = oracle::random_vec(rng, s, -2.0, 2.0);
    CHECK(oracle::rel_err(project_box_ball_dykstra(z, c, opts), project_box_ball(z, c)) <= 1e-6);
  }
}

TEST_CASE("Dykstra reports non-convergence with its last iterate") {
  const KernelConstraint c(-0.3, 0.3, 0.5);
  DykstraOptions opts;
  opts.max_iter = 1;
  try {
    (void)project_box_ball_dykstra(Vec{2.0, -1.5, 0.7, 1.0}, c, opts);
    FAIL("expected ProjectionError");
  } catch (const ProjectionError& e) {
    CHECK(e.last_iterate().size() == 4);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("box-ball projection: idempotence, dominance, nonexpansiveness") {
  std::mt19937_64 rng(5);
  for (std::size_t s : {1u, 3u, 8u, 41u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const KernelConstraint c = random_constraint(rng);
      const Vec z = oracle::random_vec(rng, s, -2.0, 2.0);
      const Vec p = project_box_ball(z, c);
      CHECK(distance(project_box_ball(p, c), p) <= 1e-10);

      const double dp = distance(p, z);
      for (int k = 0; k < 1000; ++k) CHECK(dp <= distance(random_feasible(rng, s, c), z) + 1e-12);

      const Vec z2 = oracle::random_vec(rng, s, -2.0, 2.0);
      CHECK(distance(project_box_ball(z2, c), p) <= distance(z2, z) + 1e-12);
    }
  }
}
