#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "selfforce/batch.hpp"
#include "selfforce/kernels.hpp"
#include "selfforce/quadrature.hpp"

using namespace selfforce;

TEST_CASE("self-force kernel reference values") {
  CHECK(kernels::self_force_kernel(0.0) == -3.0);
  CHECK(kernels::self_force_kernel(1.0) == -0.5);
  CHECK(kernels::self_force_kernel(2.0) == -1.0);
  CHECK(kernels::self_force_kernel(3.0) == -1.0);
  CHECK(kernels::self_force_kernel(100.0) == -1.0);
}

TEST_CASE("self-force kernel is continuous at the step edge") {
  const double below = kernels::self_force_kernel(std::nextafter(2.0, 0.0));
  const double above = kernels::self_force_kernel(std::nextafter(2.0, 3.0));
  CHECK(std::abs(below - above) < 1e-12);
}

TEST_CASE("self-force kernel magnitude peaks at the far edge of the window") {
  std::vector<double> chi(100001);
  for (std::size_t i = 0; i < chi.size(); ++i)
    chi[i] = 4.0 * static_cast<double>(i) / static_cast<double>(chi.size() - 1);
  std::vector<double> value(chi.size());
  batch::self_force_kernel(chi, value);

  double max_abs = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (std::abs(value[i]) > max_abs) {
      max_abs = std::abs(value[i]);
      argmax = i;
    }
  }
  CHECK(max_abs == kernels::kSelfForceKernelMaxAbs);
  CHECK(argmax == 0);
  for (std::size_t i = 1; i < value.size(); ++i)
    CHECK(std::abs(value[i]) < 3.0);
}

TEST_CASE("displacement kernel reference values and relation") {
  CHECK(kernels::displacement_force_kernel(0.0) == 0.0);
  CHECK(kernels::displacement_force_kernel(1.0) == -1.25);
  CHECK(kernels::displacement_force_kernel(2.0) == -1.0);
  CHECK(kernels::displacement_force_kernel(7.5) == -1.0);

  std::mt19937 rng(91);
  std::uniform_real_distribution<double> xi_dist(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double xi = xi_dist(rng);
    const double relation =
        -0.5 * kernels::self_force_kernel(xi) - 1.5;
    CHECK(std::abs(kernels::displacement_force_kernel(xi) - relation) < 1e-14);
  }
}

TEST_CASE("geometric factor reference values") {
  CHECK(kernels::geometric_factor(1.0) == -1.625);
  CHECK(kernels::geometric_factor(2.0) == -0.5);
  CHECK(kernels::geometric_factor(4.0) == -0.25);
  CHECK(kernels::geometric_factor(2.5) == -1.0 / 2.5);
  CHECK(kernels::geometric_factor(5.0) == -0.2);
}

TEST_CASE("geometric factor equals the windowed kernel average") {
  quadrature::QuadratureSpec spec;
  spec.breakpoints = {2.0};
  for (double kappa : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    const double windowed =
        quadrature::integrate(
            [](double chi) { return kernels::self_force_kernel(chi); }, 0.0,
            kappa, spec)
            .value /
        (kappa * kappa);
    CHECK(kernels::geometric_factor(kappa) ==
          doctest::Approx(windowed).epsilon(1e-10));
  }
}

TEST_CASE("step-limit radiation-reaction force identity and values") {
  CHECK(kernels::radiation_reaction_force_br(1.0) == -0.9375);
  CHECK(kernels::radiation_reaction_force_br(2.0) == 0.0);
  CHECK(!std::signbit(kernels::radiation_reaction_force_br(2.0)));
  CHECK(kernels::radiation_reaction_force_br(3.0) == 0.0);
  CHECK(std::abs(kernels::radiation_reaction_force_br(1e-6) + 3.0) < 1e-5);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> kappa_dist(1e-3, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double kappa = kappa_dist(rng);
    const double via_factor =
        1.5 * (kappa * kernels::geometric_factor(kappa) + 1.0);
    CHECK(std::abs(kernels::radiation_reaction_force_br(kappa) - via_factor) <
          1e-12);
  }
}

TEST_CASE("electrostatic limit force") {
  const auto body = kernels::TestBody::make(1.0, 1.0);
  bool exceeded = false;
  const double force =
      kernels::electrostatic_limit_force(body, 0.01, 0.1, &exceeded);
  // -(4 pi / 3)^2 * 0.01
  CHECK(force == doctest::Approx(-0.17545963379714415).epsilon(1e-12));
  CHECK(!exceeded);

  kernels::electrostatic_limit_force(body, 0.2, 0.1, &exceeded);
  CHECK(exceeded);

  // linear in the displacement, scale-invariant in rho^2 V^2 / R^3
  CHECK(kernels::electrostatic_limit_force(body, 0.02) ==
        doctest::Approx(2.0 * force).epsilon(1e-14));
}

TEST_CASE("kernel domain errors") {
  CHECK_THROWS_AS(kernels::self_force_kernel(-0.5), std::domain_error);
  CHECK_THROWS_AS(kernels::self_force_kernel(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(kernels::displacement_force_kernel(-1.0), std::domain_error);
  CHECK_THROWS_AS(kernels::geometric_factor(0.0), std::domain_error);
  CHECK_THROWS_AS(kernels::geometric_factor(-2.0), std::domain_error);
  CHECK_THROWS_AS(kernels::radiation_reaction_force_br(0.0), std::domain_error);
  CHECK_THROWS_AS(kernels::TestBody::make(0.0, 1.0), std::domain_error);
}

TEST_CASE("measurement window ties tau and kappa") {
  const auto body = kernels::TestBody::make(0.5, 1.0);
  const auto from_tau = kernels::MeasurementWindow::from_tau(2.0, body);
  CHECK(from_tau.kappa == 4.0);
  const auto from_kappa = kernels::MeasurementWindow::from_kappa(4.0, body);
  CHECK(from_kappa.tau == 2.0);
  CHECK_THROWS_AS(kernels::MeasurementWindow::from_tau(-1.0, body),
                  std::domain_error);
}
