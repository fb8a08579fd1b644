#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "selfforce/kernels.hpp"
#include "selfforce/oracles.hpp"

using namespace selfforce;

TEST_CASE("momentum-space kernel matches the closed form at spot points") {
  for (double chi : {0.0, 0.3, 1.0, 1.9, 2.0, 2.6, 4.0}) {
    const double oracle = oracles::f_hat_momentum_space(chi);
    const double closed = kernels::self_force_kernel(chi);
    CAPTURE(chi);
    CHECK(std::abs(oracle - closed) < 1e-7);
  }
}

TEST_CASE("displacement kernel via the relation") {
  for (double xi : {0.0, 0.5, 1.5, 3.0}) {
    const double oracle = oracles::g_hat_via_relation(xi);
    const double closed = kernels::displacement_force_kernel(xi);
    CAPTURE(xi);
    CHECK(std::abs(oracle - closed) < 1e-7);
  }
}

TEST_CASE("bessel normalization check passes") {
  const auto report = oracles::check_bessel_norm();
  CHECK(report.passed);
  CHECK(report.max_abs_err < report.tolerance);
  CHECK(report.quantity == "bessel_norm");
  CHECK(!report.relative_comparison);
}

TEST_CASE("geometric factor sweep against the windowed average") {
  const auto report = oracles::sweep_geometric_factor();
  CHECK(report.passed);
  CHECK(report.n_points == 25);
  CHECK(report.max_abs_err < 1e-10);
}

TEST_CASE("force grid oracle agrees with adaptive quadrature") {
  const auto body = kernels::TestBody::make(1.0, 1.0);
  const auto traj = trajectories::Trajectory::make(
      1e-3, 0.2, 2.0, trajectories::RampShape::smoothstep_cubic());
  const double adaptive = study::average_self_force(traj, body).physical;
  const double grid = oracles::force_grid_oracle(traj, body, 200'001);
  CHECK(std::abs(grid - adaptive) < 1e-7 * std::abs(adaptive));

  // refining the grid tightens the answer
  const double coarse = oracles::force_grid_oracle(traj, body, 2'001);
  const double fine = oracles::force_grid_oracle(traj, body, 400'001);
  CHECK(std::abs(fine - adaptive) < std::abs(coarse - adaptive) + 1e-15);

  CHECK_THROWS_AS(oracles::force_grid_oracle(traj, body, 4),
                  std::domain_error);
}

TEST_CASE("force cross-validation on pseudo-random configurations") {
  const auto report = oracles::cross_validate_forces(4, 1e-7, 100'001);
  CHECK(report.passed);
  CHECK(report.relative_comparison);
  CHECK(report.max_rel_err < 1e-7);
}
