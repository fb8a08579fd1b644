#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace selfforce::quadrature {

// Tolerances and splitting policy for adaptive integration.  Convergence
// means: sum of panel error estimates <= max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_subdivisions = 1'000'000;
  // Interior abscissae where the integrand may kink.  Entries outside the
  // integration interval are ignored; order does not matter.
  std::vector<double> breakpoints;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
};

// Thrown when the subdivision budget (or the averaging depth, for the
// oscillatory tail) is exhausted before the tolerance is met.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double worst_a, double worst_b,
                      double worst_error, double value_so_far)
      : std::runtime_error(what),
        worst_a_(worst_a),
        worst_b_(worst_b),
        worst_error_(worst_error),
        value_so_far_(value_so_far) {}

  double worst_a() const { return worst_a_; }
  double worst_b() const { return worst_b_; }
  double worst_error() const { return worst_error_; }
  double value_so_far() const { return value_so_far_; }

 private:
  double worst_a_;
  double worst_b_;
  double worst_error_;
  double value_so_far_;
};

// Adaptive Gauss-Kronrod 7-15 integration of fn over [a, b] (a <= b).
// Declared breakpoints seed the initial panel set so known kinks never sit
// inside a panel; undeclared kinks are still found adaptively, just more
// slowly.  fn must be finite at every evaluated point.
IntegralResult integrate(const std::function<double(double)>& fn, double a,
                         double b, const QuadratureSpec& spec = {});

// Policy for the semi-infinite oscillatory integrals below.
struct OscillatorySpec {
  // Averaging panel length per unit frequency: a component oscillating at
  // frequency w is summed over panels of length period_window / w (the
  // default pi gives half-period panels, whose sums alternate in sign).
  double period_window = std::numbers::pi;
  double initial_cutoff = 50.0;  // head/tail split point
  int acceleration_depth = 12;   // repeated-averaging passes over the tail
  double target_abs_err = 1e-8;
};

// integral_0^inf [j1(x)]^2 cos(chi x) dx for chi >= 0.
//
// The head [0, cutoff] goes through integrate(); the tail is decomposed
// exactly into power-law-times-trig components at frequencies chi,
// |2 - chi| and 2 + chi, each summed over zero-aligned panels and
// accelerated by repeated averaging of the partial sums.  Components whose
// frequency degenerates to zero are integrated analytically.
double integrate_oscillatory_bessel(double chi,
                                    const OscillatorySpec& spec = {});

// First spherical Bessel function sin(x)/x^2 - cos(x)/x, switched to its
// power series below x = 0.25 to avoid cancellation.
double spherical_bessel_j1(double x);

}  // namespace selfforce::quadrature
