#pragma once

#include <span>
#include <string>
#include <vector>

#include "selfforce/kernels.hpp"
#include "selfforce/quadrature.hpp"
#include "selfforce/trajectory.hpp"

// Time-averaged forces on the displaced test body over a measurement
// window, their decomposition into displacement-proportional and
// radiation-reaction parts, ramp-shrinking convergence studies, and the
// minimum field-uncertainty curves.
//
// Physical values carry the scale rho_c^2 V^2 / R^3; dimensionless values
// have rho_c^2 V^2 |Q_plateau| / R^3 divided out (0 when the plateau is 0).

namespace selfforce::study {

using kernels::MeasurementWindow;
using kernels::TestBody;
using quadrature::QuadratureSpec;
using trajectories::BRStepTrajectory;
using trajectories::Trajectory;
using trajectories::Violation;

struct ForceValue {
  double physical = 0.0;
  double dimensionless = 0.0;
};

// rho_c^2 V^2 |plateau| / R^3.
double force_scale(const TestBody& body, double plateau);

// Averaged self-force over the window for a ramped steplike trajectory.
// Physicality is the caller's concern (see trajectories::validate_physicality).
ForceValue average_self_force(const Trajectory& traj, const TestBody& body,
                              const QuadratureSpec& spec = {});

// Instantaneous-step limit of the same average, from the closed form.
ForceValue average_self_force_br(const MeasurementWindow& window,
                                 const TestBody& body, double plateau);

// Averaged displacement-proportional force component.
ForceValue average_displacement_force(const Trajectory& traj,
                                      const TestBody& body,
                                      const QuadratureSpec& spec = {});

ForceValue average_displacement_force_br(const MeasurementWindow& window,
                                         const TestBody& body, double plateau);

// Averaged force with no neutralizing body present: the electrostatic
// attraction toward it is removed, weighted by the trajectory's
// time-averaged displacement.
ForceValue no_neutralizing_body_force(const Trajectory& traj,
                                      const TestBody& body,
                                      const QuadratureSpec& spec = {});

ForceValue no_neutralizing_body_force_br(const MeasurementWindow& window,
                                         const TestBody& body, double plateau);

// Full decomposition of one configuration, with step-limit references,
// ramp-contribution bounds and physicality findings.
struct ForceReport {
  double kappa = 0.0;
  double dt_over_tau = 0.0;
  std::string shape;
  double q_over_r = 0.0;

  // Averaged forces: total, displacement-proportional part Q, and the
  // radiation-reaction remainder RR = total - Q, each next to its
  // instantaneous-step (BR) reference.
  double F_bar = 0.0;
  double F_bar_BR = 0.0;
  double F_bar_Q = 0.0;
  double F_bar_Q_BR = 0.0;
  double F_bar_RR = 0.0;
  double F_bar_RR_BR = 0.0;
  // Ramp-interval contributions measured over [0, dt] and [tau-dt, tau].
  double delta_F_initial = 0.0;
  double delta_F_final = 0.0;
  // Bound on |delta_F_{initial,final}| (physical force units).
  double bound_initial = 0.0;

  // Dimensionless counterparts.
  double F_hat = 0.0;
  double F_hat_BR = 0.0;
  double F_hat_Q = 0.0;
  double F_hat_Q_BR = 0.0;
  double F_hat_RR = 0.0;
  double F_hat_RR_BR = 0.0;
  double delta_F_hat_initial = 0.0;
  double delta_F_hat_final = 0.0;
  double bound_initial_hat = 0.0;

  // Bound on |delta_F_{initial,final} / F_bar_BR|.
  double bound_ratio = 0.0;

  // NaN where the step-limit denominator vanishes.
  double ratio_F_to_BR = 0.0;
  double ratio_FQ_to_QBR = 0.0;
  double ratio_FRR_to_RRBR = 0.0;

  std::vector<Violation> violations;
};

ForceReport decompose(const Trajectory& traj, const TestBody& body,
                      const QuadratureSpec& spec = {},
                      double speed_limit_fraction = 0.1);

struct ConvergenceRow {
  double delta_t_over_tau = 0.0;
  double ratio_F_to_BR = 0.0;
  double ratio_FQ_to_QBR = 0.0;
  // Ratio to the step-limit value, or |F_hat_RR| when that reference is
  // exactly zero (kappa >= 2).
  double ratio_FRR_to_RRBR = 0.0;
  double bound_15_value = 0.0;
};

struct ConvergenceStudy {
  double kappa = 0.0;
  bool rr_reported_as_absolute = false;
  std::vector<ConvergenceRow> rows;
};

ConvergenceStudy convergence_study(const Trajectory& base, const TestBody& body,
                                   int n_steps,
                                   const QuadratureSpec& spec = {});

// Minimum measurable field-energy scales against window length.
struct UncertaintyCurve {
  std::vector<double> kappa_grid;
  std::vector<double> delta_E_full;     // sqrt(hbar |A|) / R^2
  std::vector<double> delta_E_rr_only;  // sqrt(hbar/kappa)(2-kappa)/R^2, 0 past 2
  double hbar = 1.0;
  double radius = 1.0;
};

UncertaintyCurve uncertainty_curves(std::span<const double> kappa_grid,
                                    double radius, double hbar);

}  // namespace selfforce::study
