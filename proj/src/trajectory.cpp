#include "selfforce/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace selfforce::trajectories {

double RampShape::value(double u) const {
  switch (tag) {
    case RampShapeTag::linear:
      return u;
    case RampShapeTag::smoothstep_cubic:
      return u * u * (3.0 - 2.0 * u);
    case RampShapeTag::cosine:
      return 0.5 * (1.0 - std::cos(std::numbers::pi * u));
  }
  throw std::logic_error("unknown ramp shape");
}

double RampShape::max_slope() const {
  switch (tag) {
    case RampShapeTag::linear:
      return 1.0;
    case RampShapeTag::smoothstep_cubic:
      return 1.5;
    case RampShapeTag::cosine:
      return 0.5 * std::numbers::pi;
  }
  throw std::logic_error("unknown ramp shape");
}

std::string RampShape::name() const {
  switch (tag) {
    case RampShapeTag::linear:
      return "linear";
    case RampShapeTag::smoothstep_cubic:
      return "smoothstep-cubic";
    case RampShapeTag::cosine:
      return "cosine";
  }
  throw std::logic_error("unknown ramp shape");
}

RampShape RampShape::linear() { return RampShape{RampShapeTag::linear}; }
RampShape RampShape::smoothstep_cubic() {
  return RampShape{RampShapeTag::smoothstep_cubic};
}
RampShape RampShape::cosine() { return RampShape{RampShapeTag::cosine}; }

RampShape RampShape::from_name(const std::string& name) {
  if (name == "linear") return linear();
  if (name == "smoothstep" || name == "smoothstep-cubic")
    return smoothstep_cubic();
  if (name == "cosine") return cosine();
  throw std::invalid_argument("unknown ramp shape '" + name +
                              "' (expected linear|smoothstep|cosine)");
}

Trajectory Trajectory::make(double plateau, double ramp_duration,
                            double duration, RampShape shape) {
  if (!std::isfinite(plateau))
    throw std::domain_error("Trajectory.plateau must be finite");
  if (!std::isfinite(duration) || duration <= 0.0)
    throw std::domain_error("Trajectory.duration must be finite and > 0");
  if (!std::isfinite(ramp_duration) || ramp_duration <= 0.0 ||
      ramp_duration > 0.5 * duration)
    throw std::domain_error(
        "Trajectory.ramp_duration must satisfy 0 < delta_t <= duration/2");
  return Trajectory(plateau, ramp_duration, duration, shape);
}

double Trajectory::displacement(double t) const {
  if (!std::isfinite(t) || t < 0.0 || t > duration_)
    throw std::domain_error("trajectory evaluated outside [0, duration]");
  if (t < ramp_duration_) return plateau_ * shape_.value(t / ramp_duration_);
  if (t > duration_ - ramp_duration_)
    return plateau_ * shape_.value((duration_ - t) / ramp_duration_);
  return plateau_;
}

double Trajectory::mean_ramp_speed() const {
  return std::abs(plateau_) / ramp_duration_;
}

double Trajectory::max_speed() const {
  return mean_ramp_speed() * shape_.max_slope();
}

bool Trajectory::zero_plateau_interval() const {
  return ramp_duration_ >= 0.5 * duration_;
}

BRStepTrajectory BRStepTrajectory::make(double plateau, double duration) {
  if (!std::isfinite(plateau))
    throw std::domain_error("BRStepTrajectory.plateau must be finite");
  if (!std::isfinite(duration) || duration <= 0.0)
    throw std::domain_error("BRStepTrajectory.duration must be finite and > 0");
  return BRStepTrajectory{plateau, duration};
}

double BRStepTrajectory::displacement(double t) const {
  if (!std::isfinite(t) || t < 0.0 || t > duration)
    throw std::domain_error("trajectory evaluated outside [0, duration]");
  return plateau;
}

std::vector<Violation> validate_physicality(const Trajectory& traj,
                                            const kernels::TestBody& body,
                                            double speed_limit_fraction,
                                            double displacement_limit_fraction) {
  if (!(speed_limit_fraction > 0.0) || speed_limit_fraction > 1.0)
    throw std::domain_error("speed_limit_fraction must be in (0, 1]");
  if (!(displacement_limit_fraction > 0.0))
    throw std::domain_error("displacement_limit_fraction must be > 0");

  std::vector<Violation> violations;
  const double speed_limit = speed_limit_fraction;  // units of c = 1
  if (!(traj.max_speed() < speed_limit))
    violations.push_back(
        Violation{"max_speed_below_speed_limit", traj.max_speed(), speed_limit});
  const double displacement_limit = displacement_limit_fraction * body.radius;
  if (!(std::abs(traj.plateau()) < displacement_limit))
    violations.push_back(Violation{"plateau_small_against_radius",
                                   std::abs(traj.plateau()),
                                   displacement_limit});
  return violations;
}

std::vector<Trajectory> shrink_sequence(const Trajectory& base, int n_steps) {
  if (n_steps < 1) throw std::domain_error("shrink_sequence needs n_steps >= 1");
  const double sign = base.plateau() < 0.0 ? -1.0 : 1.0;
  const double mean_speed = base.mean_ramp_speed();
  std::vector<Trajectory> out;
  out.reserve(n_steps);
  out.push_back(base);
  double ramp = base.ramp_duration();
  for (int k = 1; k < n_steps; ++k) {
    ramp *= 0.5;
    out.push_back(Trajectory::make(sign * mean_speed * ramp, ramp,
                                   base.duration(), base.shape()));
  }
  return out;
}

}  // namespace selfforce::trajectories
