#pragma once

#include <cstddef>
#include <string>

#include "selfforce/quadrature.hpp"
#include "selfforce/study.hpp"

// Independent numerical routes to the closed-form kernels and forces.
// None of these share code with the closed forms they check: the kernel
// oracles go through the semi-infinite oscillatory integral, the force
// oracle through a fixed-grid composite Simpson rule.

namespace selfforce::oracles {

using kernels::TestBody;
using quadrature::OscillatorySpec;
using quadrature::QuadratureSpec;
using trajectories::Trajectory;

// Self-force kernel reconstructed from its momentum-space form,
// -(12/pi) * integral_0^inf j1(x)^2 cos(chi x) dx - 1 (the constant part of
// the defining integral is taken analytically as pi/6).
double f_hat_momentum_space(double chi, const OscillatorySpec& spec = {});

// Displacement kernel from the exact relation to the self-force kernel,
// with the self-force side evaluated in momentum space.
double g_hat_via_relation(double xi, const OscillatorySpec& spec = {});

// Averaged self-force by composite Simpson on a uniform grid, panels
// aligned to the trajectory and kernel kinks.  n_points is the approximate
// total grid size (>= 9); accuracy is the caller's concern and is usually
// checked by doubling n_points.
double force_grid_oracle(const Trajectory& traj, const TestBody& body,
                         std::size_t n_points);

struct OracleReport {
  std::string quantity;
  std::size_t n_points = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  // Which of the two errors is compared against tolerance.  Kernel sweeps
  // compare absolutely (the kernels pass through zero); the force
  // cross-validation compares relatively.
  bool relative_comparison = false;
  bool passed = false;
};

OracleReport sweep_self_force_kernel(std::size_t n_points = 101,
                                     double lo = 0.0, double hi = 4.0,
                                     double tolerance = 1e-6,
                                     const OscillatorySpec& spec = {});

OracleReport sweep_displacement_kernel(std::size_t n_points = 101,
                                       double lo = 0.0, double hi = 4.0,
                                       double tolerance = 1e-6,
                                       const OscillatorySpec& spec = {});

// Geometric factor against the windowed average of the self-force kernel,
// computed by adaptive quadrature.
OracleReport sweep_geometric_factor(std::size_t n_points = 25, double lo = 0.0,
                                    double hi = 5.0, double tolerance = 1e-10,
                                    const QuadratureSpec& spec = {});

// The j1 normalization integral against its exact value pi/6.
OracleReport check_bessel_norm(double tolerance = 1e-8,
                               const OscillatorySpec& spec = {});

// Adaptive force average against the Simpson grid oracle on deterministic
// pseudo-random steplike configurations.
OracleReport cross_validate_forces(std::size_t n_configs = 10,
                                   double tolerance = 1e-7,
                                   std::size_t grid_points = 200'001,
                                   const QuadratureSpec& spec = {});

}  // namespace selfforce::oracles
