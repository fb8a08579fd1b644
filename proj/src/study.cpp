#include "selfforce/study.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "selfforce/batch.hpp"

namespace selfforce::study {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double squared_charge_volume(const TestBody& body) {
  const double v = body.volume();
  return body.charge_density * body.charge_density * v * v;
}

QuadratureSpec with_breakpoints(QuadratureSpec spec,
                                std::initializer_list<double> points) {
  spec.breakpoints.insert(spec.breakpoints.end(), points);
  return spec;
}

// integral of Q(t) * self_force_kernel((tau - t)/R) over [t0, t1]
double self_force_moment(const Trajectory& traj, const TestBody& body,
                         double t0, double t1, const QuadratureSpec& spec) {
  const double tau = traj.duration();
  const double r = body.radius;
  auto integrand = [&](double t) {
    return traj.displacement(t) *
           kernels::self_force_kernel((tau - t) / r);
  };
  const QuadratureSpec full = with_breakpoints(
      spec, {traj.ramp_duration(), tau - traj.ramp_duration(), tau - 2.0 * r});
  return quadrature::integrate(integrand, t0, t1, full).value;
}

double displacement_force_moment(const Trajectory& traj, const TestBody& body,
                                 double t0, double t1,
                                 const QuadratureSpec& spec) {
  const double tau = traj.duration();
  const double r = body.radius;
  auto integrand = [&](double t) {
    return traj.displacement(t) * kernels::displacement_force_kernel(t / r);
  };
  const QuadratureSpec full = with_breakpoints(
      spec, {traj.ramp_duration(), tau - traj.ramp_duration(), 2.0 * r});
  return quadrature::integrate(integrand, t0, t1, full).value;
}

ForceValue from_moment(double moment, const Trajectory& traj,
                       const TestBody& body) {
  const double tau = traj.duration();
  const double r3 = body.radius * body.radius * body.radius;
  const double physical = squared_charge_volume(body) * moment / (tau * r3);
  const double q = std::abs(traj.plateau());
  return ForceValue{physical, q > 0.0 ? moment / (tau * q) : 0.0};
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double force_scale(const TestBody& body, double plateau) {
  const double r3 = body.radius * body.radius * body.radius;
  return squared_charge_volume(body) * std::abs(plateau) / r3;
}

ForceValue average_self_force(const Trajectory& traj, const TestBody& body,
                              const QuadratureSpec& spec) {
  return from_moment(self_force_moment(traj, body, 0.0, traj.duration(), spec),
                     traj, body);
}

ForceValue average_self_force_br(const MeasurementWindow& window,
                                 const TestBody& body, double plateau) {
  const double hat = window.kappa * kernels::geometric_factor(window.kappa);
  const double r3 = body.radius * body.radius * body.radius;
  const double physical = squared_charge_volume(body) * plateau * hat / r3;
  return ForceValue{physical, plateau == 0.0 ? 0.0 : sign_of(plateau) * hat};
}

ForceValue average_displacement_force(const Trajectory& traj,
                                      const TestBody& body,
                                      const QuadratureSpec& spec) {
  return from_moment(
      displacement_force_moment(traj, body, 0.0, traj.duration(), spec), traj,
      body);
}

ForceValue average_displacement_force_br(const MeasurementWindow& window,
                                         const TestBody& body,
                                         double plateau) {
  const double hat =
      -0.5 * window.kappa * kernels::geometric_factor(window.kappa) - 1.5;
  const double r3 = body.radius * body.radius * body.radius;
  const double physical = squared_charge_volume(body) * plateau * hat / r3;
  return ForceValue{physical, plateau == 0.0 ? 0.0 : sign_of(plateau) * hat};
}

ForceValue no_neutralizing_body_force(const Trajectory& traj,
                                      const TestBody& body,
                                      const QuadratureSpec& spec) {
  const double tau = traj.duration();
  const QuadratureSpec mean_spec = with_breakpoints(
      spec, {traj.ramp_duration(), tau - traj.ramp_duration()});
  const double mean_displacement =
      quadrature::integrate([&](double t) { return traj.displacement(t); },
                            0.0, tau, mean_spec)
          .value /
      tau;
  const ForceValue with_body = average_self_force(traj, body, spec);
  const double r3 = body.radius * body.radius * body.radius;
  const double physical =
      with_body.physical +
      squared_charge_volume(body) * mean_displacement / r3;
  const double scale = force_scale(body, traj.plateau());
  return ForceValue{physical, scale > 0.0 ? physical / scale : 0.0};
}

ForceValue no_neutralizing_body_force_br(const MeasurementWindow& window,
                                         const TestBody& body,
                                         double plateau) {
  const double hat =
      window.kappa * kernels::geometric_factor(window.kappa) + 1.0;
  const double r3 = body.radius * body.radius * body.radius;
  const double physical = squared_charge_volume(body) * plateau * hat / r3;
  return ForceValue{physical, plateau == 0.0 ? 0.0 : sign_of(plateau) * hat};
}

ForceReport decompose(const Trajectory& traj, const TestBody& body,
                      const QuadratureSpec& spec,
                      double speed_limit_fraction) {
  const double tau = traj.duration();
  const double dt = traj.ramp_duration();
  const double kappa = tau / body.radius;
  const double q = traj.plateau();

  ForceReport report;
  report.kappa = kappa;
  report.dt_over_tau = dt / tau;
  report.shape = traj.shape().name();
  report.q_over_r = q / body.radius;

  const double moment_f = self_force_moment(traj, body, 0.0, tau, spec);
  const double moment_f_initial = self_force_moment(traj, body, 0.0, dt, spec);
  const double moment_f_final =
      self_force_moment(traj, body, tau - dt, tau, spec);
  const double moment_g =
      displacement_force_moment(traj, body, 0.0, tau, spec);

  const ForceValue f = from_moment(moment_f, traj, body);
  const ForceValue f_initial = from_moment(moment_f_initial, traj, body);
  const ForceValue f_final = from_moment(moment_f_final, traj, body);
  const ForceValue g = from_moment(moment_g, traj, body);

  const MeasurementWindow window = MeasurementWindow::from_tau(tau, body);
  const ForceValue f_br = average_self_force_br(window, body, q);
  const ForceValue g_br = average_displacement_force_br(window, body, q);
  const double rr_br_hat = kernels::radiation_reaction_force_br(kappa);
  const double scale = force_scale(body, q);

  report.F_bar = f.physical;
  report.F_bar_BR = f_br.physical;
  report.F_bar_Q = g.physical;
  report.F_bar_Q_BR = g_br.physical;
  report.F_bar_RR = f.physical - g.physical;
  report.F_bar_RR_BR = scale * sign_of(q) * rr_br_hat;
  report.delta_F_initial = f_initial.physical;
  report.delta_F_final = f_final.physical;

  report.F_hat = f.dimensionless;
  report.F_hat_BR = f_br.dimensionless;
  report.F_hat_Q = g.dimensionless;
  report.F_hat_Q_BR = g_br.dimensionless;
  report.F_hat_RR = f.dimensionless - g.dimensionless;
  report.F_hat_RR_BR = q == 0.0 ? 0.0 : sign_of(q) * rr_br_hat;
  report.delta_F_hat_initial = f_initial.dimensionless;
  report.delta_F_hat_final = f_final.dimensionless;

  const double slope = traj.shape().max_slope();
  const double dt_frac = dt / tau;
  report.bound_initial_hat =
      kernels::kSelfForceKernelMaxAbs * slope * dt_frac;
  report.bound_initial = scale * report.bound_initial_hat;
  const double step = kappa < 2.0
                          ? (4.0 + kappa) * (2.0 - kappa) * (2.0 - kappa)
                          : 0.0;
  report.bound_ratio = 24.0 / (step + 8.0) * slope * dt_frac;

  auto ratio = [](double num, double den) {
    return den != 0.0 ? num / den : kNaN;
  };
  report.ratio_F_to_BR = ratio(report.F_hat, report.F_hat_BR);
  report.ratio_FQ_to_QBR = ratio(report.F_hat_Q, report.F_hat_Q_BR);
  report.ratio_FRR_to_RRBR = ratio(report.F_hat_RR, report.F_hat_RR_BR);

  report.violations =
      trajectories::validate_physicality(traj, body, speed_limit_fraction);
  return report;
}

ConvergenceStudy convergence_study(const Trajectory& base, const TestBody& body,
                                   int n_steps, const QuadratureSpec& spec) {
  if (n_steps < 2)
    throw std::domain_error("convergence_study needs n_steps >= 2");

  ConvergenceStudy result;
  result.kappa = base.duration() / body.radius;
  result.rr_reported_as_absolute = result.kappa >= 2.0;

  for (const Trajectory& traj : trajectories::shrink_sequence(base, n_steps)) {
    const ForceReport report = decompose(traj, body, spec);
    ConvergenceRow row;
    row.delta_t_over_tau = report.dt_over_tau;
    row.ratio_F_to_BR = report.ratio_F_to_BR;
    row.ratio_FQ_to_QBR = report.ratio_FQ_to_QBR;
    row.ratio_FRR_to_RRBR = result.rr_reported_as_absolute
                                ? std::abs(report.F_hat_RR)
                                : report.ratio_FRR_to_RRBR;
    row.bound_15_value = report.bound_ratio;
    result.rows.push_back(row);
  }
  return result;
}

UncertaintyCurve uncertainty_curves(std::span<const double> kappa_grid,
                                    double radius, double hbar) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::domain_error("radius must be finite and > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw std::domain_error("hbar must be finite and > 0");
  for (double k : kappa_grid)
    if (!(k > 0.0) || !std::isfinite(k))
      throw std::domain_error("kappa grid entries must be finite and > 0");

  UncertaintyCurve curve;
  curve.hbar = hbar;
  curve.radius = radius;
  curve.kappa_grid.assign(kappa_grid.begin(), kappa_grid.end());

  std::vector<double> factor(curve.kappa_grid.size());
  batch::geometric_factor(curve.kappa_grid, factor);

  const double r2 = radius * radius;
  curve.delta_E_full.resize(curve.kappa_grid.size());
  curve.delta_E_rr_only.resize(curve.kappa_grid.size());
  for (std::size_t i = 0; i < curve.kappa_grid.size(); ++i) {
    const double kappa = curve.kappa_grid[i];
    curve.delta_E_full[i] = std::sqrt(hbar * std::abs(factor[i])) / r2;
    curve.delta_E_rr_only[i] =
        kappa < 2.0 ? std::sqrt(hbar / kappa) * (2.0 - kappa) / r2 : 0.0;
  }
  return curve;
}

}  // namespace selfforce::study
