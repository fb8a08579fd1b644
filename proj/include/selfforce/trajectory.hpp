#pragma once

#include <string>
#include <vector>

#include "selfforce/kernels.hpp"

// Steplike displacement trajectories: ramp up over delta_t, hold the
// plateau, ramp back down over the final delta_t of the measurement.

namespace selfforce::trajectories {

enum class RampShapeTag { linear, smoothstep_cubic, cosine };

// Monotone ramp profile s on [0, 1] with s(0) = 0, s(1) = 1.
struct RampShape {
  RampShapeTag tag = RampShapeTag::smoothstep_cubic;

  double value(double u) const;
  // max |s'| over [0, 1]: 1 (linear), 1.5 (smoothstep), pi/2 (cosine).
  double max_slope() const;
  std::string name() const;

  static RampShape linear();
  static RampShape smoothstep_cubic();
  static RampShape cosine();
  // Accepts "linear", "smoothstep", "smoothstep-cubic", "cosine".
  static RampShape from_name(const std::string& name);
};

// Displacement history Q(t) on [0, tau]: plateau * s(t/delta_t) going up,
// the plateau itself, plateau * s((tau - t)/delta_t) coming down.
class Trajectory {
 public:
  // Validates 0 < ramp_duration <= duration/2 and finite fields.  A zero
  // plateau interval (ramp_duration == duration/2) is allowed; see
  // zero_plateau_interval().
  static Trajectory make(double plateau, double ramp_duration,
                         double duration, RampShape shape);

  // Q(t); domain error outside [0, duration].
  double displacement(double t) const;

  double plateau() const { return plateau_; }
  double ramp_duration() const { return ramp_duration_; }
  double duration() const { return duration_; }
  const RampShape& shape() const { return shape_; }

  // |plateau| / ramp_duration.
  double mean_ramp_speed() const;
  // mean_ramp_speed() * shape().max_slope().
  double max_speed() const;
  bool zero_plateau_interval() const;

 private:
  Trajectory(double plateau, double ramp_duration, double duration,
             RampShape shape)
      : plateau_(plateau),
        ramp_duration_(ramp_duration),
        duration_(duration),
        shape_(shape) {}

  double plateau_;
  double ramp_duration_;
  double duration_;
  RampShape shape_;
};

// Idealized instantaneous-step history: Q(t) = plateau on all of [0, tau],
// endpoints included.
struct BRStepTrajectory {
  double plateau = 0.0;
  double duration = 1.0;

  static BRStepTrajectory make(double plateau, double duration);
  double displacement(double t) const;
};

struct Violation {
  std::string constraint;
  double value = 0.0;
  double limit = 0.0;
};

// Checks max_speed < speed_limit_fraction * c and |plateau| <
// displacement_limit_fraction * R.  Empty result means physical.
std::vector<Violation> validate_physicality(
    const Trajectory& traj, const kernels::TestBody& body,
    double speed_limit_fraction = 0.1, double displacement_limit_fraction = 0.1);

// Ramp-shrinking sequence for convergence studies: element k has
// ramp_duration / 2^k and plateau scaled so the mean ramp speed stays fixed.
// Element 0 is the base trajectory.
std::vector<Trajectory> shrink_sequence(const Trajectory& base, int n_steps);

}  // namespace selfforce::trajectories
