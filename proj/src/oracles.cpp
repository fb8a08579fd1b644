#include "selfforce/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "selfforce/batch.hpp"
#include "selfforce/kernels.hpp"

namespace selfforce::oracles {

double f_hat_momentum_space(double chi, const OscillatorySpec& spec) {
  const double cosine_part = quadrature::integrate_oscillatory_bessel(chi, spec);
  return -(12.0 / std::numbers::pi) * cosine_part - 1.0;
}

double g_hat_via_relation(double xi, const OscillatorySpec& spec) {
  return -0.5 * f_hat_momentum_space(xi, spec) - 1.5;
}

namespace {

double simpson(const std::function<double(double)>& fn, double a, double b,
               std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = a + h * static_cast<double>(i);
    if (i % 2 == 1)
      odd += fn(x);
    else
      even += fn(x);
  }
  return (fn(a) + fn(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

std::vector<double> grid_points(double lo, double hi, std::size_t n) {
  std::vector<double> points(n);
  if (n == 1) {
    points[0] = lo;
    return points;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    points[i] = lo + step * static_cast<double>(i);
  points.back() = hi;
  return points;
}

void fold_errors(double reference, double value, OracleReport& report) {
  const double abs_err = std::abs(value - reference);
  report.max_abs_err = std::max(report.max_abs_err, abs_err);
  if (reference != 0.0)  // relative error is undefined at a zero reference
    report.max_rel_err =
        std::max(report.max_rel_err, abs_err / std::abs(reference));
}

void finish(OracleReport& report) {
  report.passed = (report.relative_comparison ? report.max_rel_err
                                              : report.max_abs_err) <=
                  report.tolerance;
}

}  // namespace

double force_grid_oracle(const Trajectory& traj, const TestBody& body,
                         std::size_t n_points) {
  if (n_points < 9)
    throw std::domain_error("force_grid_oracle needs n_points >= 9");

  const double tau = traj.duration();
  const double r = body.radius;
  auto integrand = [&](double t) {
    return traj.displacement(t) * kernels::self_force_kernel((tau - t) / r);
  };

  std::vector<double> cuts{0.0, tau};
  for (double x : {traj.ramp_duration(), tau - traj.ramp_duration(),
                   tau - 2.0 * r})
    if (x > 0.0 && x < tau) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double moment = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    auto intervals = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n_points) * (b - a) / tau));
    intervals = std::max<std::size_t>(intervals, 8);
    if (intervals % 2 == 1) ++intervals;
    moment += simpson(integrand, a, b, intervals);
  }

  const double v = body.volume();
  const double r3 = r * r * r;
  return body.charge_density * body.charge_density * v * v * moment /
         (tau * r3);
}

OracleReport sweep_self_force_kernel(std::size_t n_points, double lo,
                                     double hi, double tolerance,
                                     const OscillatorySpec& spec) {
  OracleReport report;
  report.quantity = "f_hat";
  report.n_points = n_points;
  report.tolerance = tolerance;

  const std::vector<double> chi = grid_points(lo, hi, n_points);
  std::vector<double> closed(chi.size());
  batch::self_force_kernel(chi, closed);
  for (std::size_t i = 0; i < chi.size(); ++i)
    fold_errors(closed[i], f_hat_momentum_space(chi[i], spec), report);
  finish(report);
  return report;
}

OracleReport sweep_displacement_kernel(std::size_t n_points, double lo,
                                       double hi, double tolerance,
                                       const OscillatorySpec& spec) {
  OracleReport report;
  report.quantity = "g_hat";
  report.n_points = n_points;
  report.tolerance = tolerance;

  const std::vector<double> xi = grid_points(lo, hi, n_points);
  std::vector<double> closed(xi.size());
  batch::displacement_force_kernel(xi, closed);
  for (std::size_t i = 0; i < xi.size(); ++i)
    fold_errors(closed[i], g_hat_via_relation(xi[i], spec), report);
  finish(report);
  return report;
}

OracleReport sweep_geometric_factor(std::size_t n_points, double lo, double hi,
                                    double tolerance,
                                    const QuadratureSpec& spec) {
  OracleReport report;
  report.quantity = "A_hat";
  report.n_points = n_points;
  report.tolerance = tolerance;

  QuadratureSpec window_spec = spec;
  window_spec.breakpoints.push_back(2.0);
  const double step = (hi - lo) / static_cast<double>(n_points);
  for (std::size_t i = 1; i <= n_points; ++i) {
    const double kappa = lo + step * static_cast<double>(i);
    const double windowed =
        quadrature::integrate(
            [](double chi) { return kernels::self_force_kernel(chi); }, 0.0,
            kappa, window_spec)
            .value /
        (kappa * kappa);
    fold_errors(windowed, kernels::geometric_factor(kappa), report);
  }
  finish(report);
  return report;
}

OracleReport check_bessel_norm(double tolerance, const OscillatorySpec& spec) {
  OracleReport report;
  report.quantity = "bessel_norm";
  report.n_points = 1;
  report.tolerance = tolerance;
  fold_errors(std::numbers::pi / 6.0,
              quadrature::integrate_oscillatory_bessel(0.0, spec), report);
  finish(report);
  return report;
}

OracleReport cross_validate_forces(std::size_t n_configs, double tolerance,
                                   std::size_t grid_points,
                                   const QuadratureSpec& spec) {
  OracleReport report;
  report.quantity = "force_grid";
  report.n_points = n_configs;
  report.tolerance = tolerance;
  report.relative_comparison = true;

  std::mt19937 rng(20260816u);
  std::uniform_real_distribution<double> kappa_dist(0.3, 5.0);
  std::uniform_real_distribution<double> dt_frac_dist(0.01, 0.2);
  const trajectories::RampShape shapes[] = {
      trajectories::RampShape::linear(),
      trajectories::RampShape::smoothstep_cubic(),
      trajectories::RampShape::cosine()};

  const TestBody body = TestBody::make(1.0, 1.0);
  for (std::size_t i = 0; i < n_configs; ++i) {
    const double kappa = kappa_dist(rng);
    const double dt_frac = dt_frac_dist(rng);
    const Trajectory traj = Trajectory::make(
        1e-3 * body.radius, dt_frac * kappa * body.radius,
        kappa * body.radius, shapes[i % 3]);
    const double adaptive = study::average_self_force(traj, body, spec).physical;
    const double gridded = force_grid_oracle(traj, body, grid_points);
    fold_errors(gridded, adaptive, report);
  }
  finish(report);
  return report;
}

}  // namespace selfforce::oracles
