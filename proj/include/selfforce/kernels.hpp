#pragma once

// Closed-form kernels and geometric factors for the time-averaged
// electromagnetic self-force on a uniformly charged spherical test body
// displaced along a steplike trajectory during a field measurement.
//
// Everything here is dimensionless, in units where the body radius R and
// the speed of light are 1; physical scales enter through TestBody at the
// reporting boundary.  Arguments:
//   chi   -- retarded offset (tau - t1)/R weighting the trajectory
//   xi    -- elapsed time t2/R of the displacement-proportional kernel
//   kappa -- measurement duration tau/R

namespace selfforce::kernels {

// Uniformly charged spherical test body.
struct TestBody {
  double radius = 1.0;
  double charge_density = 1.0;

  double volume() const;        // (4/3) pi R^3
  double total_charge() const;  // charge_density * volume()

  // Validates radius > 0 and finite fields.
  static TestBody make(double radius, double charge_density);
};

// Measurement window of duration tau together with kappa = tau/R.
struct MeasurementWindow {
  double tau = 1.0;
  double kappa = 1.0;

  static MeasurementWindow from_tau(double tau, const TestBody& body);
  static MeasurementWindow from_kappa(double kappa, const TestBody& body);
};

// One sampled kernel value.
struct KernelPoint {
  double argument = 0.0;
  double value = 0.0;
};

// R^3-scaled kernel weighting the displacement history in the averaged
// self-force.  Piecewise cubic: -chi^3/2 + 3 chi - 3 on [0, 2), exactly -1
// for chi >= 2 (the step factor is taken as 1 at its edge).  Its largest
// absolute value is 3, at chi = 0.  Domain error for chi < 0 or non-finite.
double self_force_kernel(double chi);

// R^3-scaled kernel of the force component proportional to the
// instantaneous displacement.  Satisfies
//   displacement_force_kernel(x) == -self_force_kernel(x)/2 - 3/2
// identically; equals exactly -1 for xi >= 2.
double displacement_force_kernel(double xi);

// R^4-scaled geometric factor of the averaged force for a steady
// displacement: the mean of self_force_kernel over [0, kappa], divided by
// kappa.  Exactly -1/kappa for kappa >= 2.  Domain error for kappa <= 0.
double geometric_factor(double kappa);

// Dimensionless radiation-reaction part of the averaged force in the
// instantaneous-step limit; identically equal to
// 1.5 * (kappa * geometric_factor(kappa) + 1) and exactly 0 for kappa >= 2.
double radiation_reaction_force_br(double kappa);

// Electrostatic attraction toward the neutralizing body for a steady
// displacement, -rho_c^2 V^2 q / R^3, valid while |q| is small against R.
// When |q| >= warn_fraction * R the value is still returned and
// *small_q_exceeded (if non-null) is set.
double electrostatic_limit_force(const TestBody& body, double displacement,
                                 double warn_fraction = 0.1,
                                 bool* small_q_exceeded = nullptr);

// max |self_force_kernel| over [0, inf); used by the ramp bounds.
inline constexpr double kSelfForceKernelMaxAbs = 3.0;

}  // namespace selfforce::kernels
