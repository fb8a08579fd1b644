#include "selfforce/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "selfforce/detail/kernel_math.hpp"

namespace selfforce::kernels {

namespace {

void require_finite_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error(std::string(what) +
                            " must be finite and >= 0, got " +
                            std::to_string(x));
}

void require_finite_pos(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error(std::string(what) +
                            " must be finite and > 0, got " +
                            std::to_string(x));
}

}  // namespace

double TestBody::volume() const {
  return (4.0 / 3.0) * std::numbers::pi * radius * radius * radius;
}

double TestBody::total_charge() const { return charge_density * volume(); }

TestBody TestBody::make(double radius, double charge_density) {
  require_finite_pos(radius, "TestBody.radius");
  if (!std::isfinite(charge_density))
    throw std::domain_error("TestBody.charge_density must be finite");
  return TestBody{radius, charge_density};
}

MeasurementWindow MeasurementWindow::from_tau(double tau,
                                              const TestBody& body) {
  require_finite_pos(tau, "MeasurementWindow.tau");
  return MeasurementWindow{tau, tau / body.radius};
}

MeasurementWindow MeasurementWindow::from_kappa(double kappa,
                                                const TestBody& body) {
  require_finite_pos(kappa, "MeasurementWindow.kappa");
  return MeasurementWindow{kappa * body.radius, kappa};
}

double self_force_kernel(double chi) {
  require_finite_nonneg(chi, "chi");
  return detail::self_force_kernel_elem(chi);
}

double displacement_force_kernel(double xi) {
  require_finite_nonneg(xi, "xi");
  return detail::displacement_force_kernel_elem(xi);
}

double geometric_factor(double kappa) {
  require_finite_pos(kappa, "kappa");
  return detail::geometric_factor_elem(kappa);
}

double radiation_reaction_force_br(double kappa) {
  require_finite_pos(kappa, "kappa");
  return detail::radiation_reaction_force_br_elem(kappa);
}

double electrostatic_limit_force(const TestBody& body, double displacement,
                                 double warn_fraction, bool* small_q_exceeded) {
  if (!std::isfinite(displacement))
    throw std::domain_error("displacement must be finite");
  if (small_q_exceeded != nullptr)
    *small_q_exceeded = std::abs(displacement) >= warn_fraction * body.radius;
  const double v = body.volume();
  const double r3 = body.radius * body.radius * body.radius;
  return -body.charge_density * body.charge_density * v * v * displacement /
         r3;
}

}  // namespace selfforce::kernels
