#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "selfforce/study.hpp"

using namespace selfforce;
using study::TestBody;
using trajectories::RampShape;
using trajectories::Trajectory;

namespace {

TestBody unit_body() { return TestBody::make(1.0, 1.0); }

Trajectory make_traj(double kappa, double dt_frac, double q,
                     RampShape shape = RampShape::smoothstep_cubic(),
                     double radius = 1.0) {
  const double tau = kappa * radius;
  return Trajectory::make(q, dt_frac * tau, tau, shape);
}

}  // namespace

TEST_CASE("step-limit averages reproduce the closed forms") {
  const auto body = unit_body();
  const double q = 1e-3;
  // kappa = 1: A = -1.625, Q part = -0.6875, RR part = -0.9375
  const auto w1 = kernels::MeasurementWindow::from_kappa(1.0, body);
  CHECK(study::average_self_force_br(w1, body, q).dimensionless == -1.625);
  CHECK(study::average_displacement_force_br(w1, body, q).dimensionless ==
        doctest::Approx(-0.6875).epsilon(1e-15));
  CHECK(study::average_self_force_br(w1, body, q).dimensionless -
            study::average_displacement_force_br(w1, body, q).dimensionless ==
        doctest::Approx(kernels::radiation_reaction_force_br(1.0))
            .epsilon(1e-14));
  // no neutralizing body: kappa A + 1 = -0.625
  CHECK(study::no_neutralizing_body_force_br(w1, body, q).dimensionless ==
        doctest::Approx(-0.625).epsilon(1e-14));

  // kappa >= 2: A-part saturates at -1/kappa so kappa*A = -1
  for (double kappa : {2.0, 3.0, 5.0}) {
    const auto w = kernels::MeasurementWindow::from_kappa(kappa, body);
    CHECK(study::average_self_force_br(w, body, q).dimensionless ==
          doctest::Approx(-1.0).epsilon(1e-14));
    // physical value equals the electrostatic limit
    const double electro = kernels::electrostatic_limit_force(body, q);
    CHECK(study::average_self_force_br(w, body, q).physical ==
          doctest::Approx(electro).epsilon(1e-12));
  }

  // zero plateau degenerates cleanly
  CHECK(study::average_self_force_br(w1, body, 0.0).physical == 0.0);
  CHECK(study::average_self_force_br(w1, body, 0.0).dimensionless == 0.0);
}

TEST_CASE("decomposition is exact and signs follow the plateau") {
  const auto body = unit_body();
  const auto traj = make_traj(1.0, 0.05, 1e-3);
  const auto rep = study::decompose(traj, body);

  CHECK(rep.kappa == doctest::Approx(1.0));
  CHECK(rep.dt_over_tau == doctest::Approx(0.05));
  CHECK(rep.shape == "smoothstep-cubic");
  CHECK(rep.F_bar_RR == rep.F_bar - rep.F_bar_Q);
  CHECK(rep.F_hat_RR ==
        doctest::Approx(rep.F_hat - rep.F_hat_Q).epsilon(1e-14));
  CHECK(rep.F_hat_BR == doctest::Approx(-1.625).epsilon(1e-14));
  CHECK(rep.F_hat_RR_BR == doctest::Approx(-0.9375).epsilon(1e-14));

  // small ramp: averaged force is near the step limit, within bound (15)
  CHECK(std::abs(rep.ratio_F_to_BR - 1.0) <= rep.bound_ratio);
  CHECK(rep.bound_ratio > 0.0);
  CHECK(rep.bound_initial_hat ==
        doctest::Approx(3.0 * 1.5 * 0.05).epsilon(1e-14));

  // flipping the plateau sign flips every physical force
  const auto neg = study::decompose(make_traj(1.0, 0.05, -1e-3), body);
  CHECK(neg.F_bar == doctest::Approx(-rep.F_bar).epsilon(1e-12));
  CHECK(neg.F_bar_BR == doctest::Approx(-rep.F_bar_BR).epsilon(1e-14));
  // dimensionless values are normalized by |Q| and keep the direction;
  // ratios to the step limit are sign-invariant
  CHECK(neg.F_hat == doctest::Approx(-rep.F_hat).epsilon(1e-12));
  CHECK(neg.ratio_F_to_BR ==
        doctest::Approx(rep.ratio_F_to_BR).epsilon(1e-12));
}

TEST_CASE("ramp-interval bounds hold across shapes and windows") {
  const auto body = unit_body();
  std::mt19937 rng(515);
  std::uniform_real_distribution<double> kappa_dist(0.2, 5.0);
  std::uniform_real_distribution<double> dt_dist(0.001, 0.2);
  const RampShape shapes[] = {RampShape::linear(), RampShape::smoothstep_cubic(),
                              RampShape::cosine()};
  for (int i = 0; i < 30; ++i) {
    const double kappa = kappa_dist(rng);
    const double dt_frac = dt_dist(rng);
    const auto shape = shapes[i % 3];
    const auto traj = make_traj(kappa, dt_frac, 1e-4, shape);
    const auto rep = study::decompose(traj, body);
    CAPTURE(kappa);
    CAPTURE(dt_frac);
    CAPTURE(shape.name());
    CHECK(std::abs(rep.delta_F_hat_initial) <= rep.bound_initial_hat);
    CHECK(std::abs(rep.delta_F_hat_final) <= rep.bound_initial_hat);
    CHECK(std::abs(rep.delta_F_initial) <= rep.bound_initial);
    CHECK(std::abs(rep.delta_F_final) <= rep.bound_initial);
  }
}

TEST_CASE("no-neutralizing-body force matches its step identity") {
  const auto body = unit_body();
  for (double kappa : {0.5, 1.0, 1.5}) {
    const auto w = kernels::MeasurementWindow::from_kappa(kappa, body);
    const double lhs =
        study::no_neutralizing_body_force_br(w, body, 1e-3).dimensionless;
    const double rhs =
        (2.0 / 3.0) * kernels::radiation_reaction_force_br(kappa);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  // ramped version approaches the step version as dt shrinks
  const auto tight = make_traj(1.0, 0.002, 1e-3);
  const auto w = kernels::MeasurementWindow::from_kappa(1.0, body);
  const double ramped =
      study::no_neutralizing_body_force(tight, body).dimensionless;
  const double step =
      study::no_neutralizing_body_force_br(w, body, 1e-3).dimensionless;
  CHECK(ramped == doctest::Approx(step).epsilon(0.02));
}

TEST_CASE("convergence study tightens toward the step limit") {
  const auto body = unit_body();
  const auto base = make_traj(1.0, 0.1, 1e-4);
  const auto cs = study::convergence_study(base, body, 5);
  REQUIRE(cs.rows.size() == 5);
  CHECK(cs.kappa == doctest::Approx(1.0));
  CHECK(!cs.rr_reported_as_absolute);
  for (std::size_t k = 0; k < cs.rows.size(); ++k) {
    const auto& row = cs.rows[k];
    CHECK(row.delta_t_over_tau == doctest::Approx(0.1 / double(1 << k)));
    CHECK(std::abs(row.ratio_F_to_BR - 1.0) <= 2.0 * row.bound_15_value);
    if (k > 0)
      CHECK(std::abs(row.ratio_F_to_BR - 1.0) <
            std::abs(cs.rows[k - 1].ratio_F_to_BR - 1.0));
  }

  // kappa >= 2: the RR reference is zero, so the study reports |F_hat_RR|
  const auto wide = make_traj(3.0, 0.1, 1e-4);
  const auto cs2 = study::convergence_study(wide, body, 4);
  CHECK(cs2.rr_reported_as_absolute);
  for (std::size_t k = 1; k < cs2.rows.size(); ++k)
    CHECK(cs2.rows[k].ratio_FRR_to_RRBR < cs2.rows[k - 1].ratio_FRR_to_RRBR);

  CHECK_THROWS_AS(study::convergence_study(base, body, 1), std::domain_error);
}

TEST_CASE("uncertainty curves") {
  const double grid[] = {0.5, 1.0, 2.0, 4.0};
  const auto curve = study::uncertainty_curves(grid, 1.0, 1.0);
  REQUIRE(curve.kappa_grid.size() == 4);
  // sqrt(|A|): A(1) = -1.625
  CHECK(curve.delta_E_full[1] == doctest::Approx(std::sqrt(1.625)).epsilon(1e-14));
  // A(4) = -0.25
  CHECK(curve.delta_E_full[3] == 0.5);
  // rr-only: sqrt(1/kappa) (2 - kappa), zero at and past 2
  CHECK(curve.delta_E_rr_only[0] ==
        doctest::Approx(std::sqrt(2.0) * 1.5).epsilon(1e-14));
  CHECK(curve.delta_E_rr_only[1] == 1.0);
  CHECK(curve.delta_E_rr_only[2] == 0.0);
  CHECK(curve.delta_E_rr_only[3] == 0.0);

  // hbar and radius scalings
  const auto scaled = study::uncertainty_curves(grid, 2.0, 4.0);
  CHECK(scaled.delta_E_full[1] ==
        doctest::Approx(curve.delta_E_full[1] * 2.0 / 4.0).epsilon(1e-14));

  CHECK_THROWS_AS(study::uncertainty_curves(grid, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(study::uncertainty_curves(grid, 1.0, -1.0),
                  std::domain_error);
  const double bad[] = {0.5, -1.0};
  CHECK_THROWS_AS(study::uncertainty_curves(bad, 1.0, 1.0), std::domain_error);
}
