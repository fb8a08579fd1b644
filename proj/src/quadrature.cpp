#include "selfforce/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

namespace selfforce::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

Panel gk15(const std::function<double(double)>& fn, double a, double b,
           std::size_t& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto eval = [&](double x) {
    double v = fn(x);
    ++evaluations;
    if (!std::isfinite(v))
      throw std::domain_error("integrand is not finite at x = " +
                              std::to_string(x));
    return v;
  };

  double fc = eval(center);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = eval(center - dx);
    fv2[j] = eval(center + dx);
    const double sum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }

  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double underflow = std::numeric_limits<double>::min();
  if (resabs > underflow / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);

  return Panel{a, b, resk * half, err};
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& fn, double a,
                         double b, const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integration limits must be finite");
  if (a > b) throw std::invalid_argument("integration requires a <= b");
  if (a == b) return IntegralResult{};

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : spec.breakpoints)
    if (std::isfinite(x) && x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  IntegralResult result;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> open;
  double dead_value = 0.0;
  double dead_error = 0.0;
  double open_value = 0.0;
  double open_error = 0.0;

  auto push = [&](Panel p) {
    open_value += p.value;
    open_error += p.error;
    open.push(p);
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    push(gk15(fn, cuts[i], cuts[i + 1], result.evaluations));

  auto total_value = [&] { return open_value + dead_value; };
  auto total_error = [&] { return open_error + dead_error; };
  auto converged = [&] {
    return total_error() <=
           std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value()));
  };

  while (!converged()) {
    if (open.empty() || result.subdivisions >= spec.max_subdivisions) {
      const Panel worst = open.empty()
                              ? Panel{a, b, total_value(), total_error()}
                              : open.top();
      throw NonConvergenceError(
          "adaptive quadrature did not converge after " +
              std::to_string(result.subdivisions) +
              " subdivisions; worst panel [" + std::to_string(worst.a) + ", " +
              std::to_string(worst.b) + "] error " +
              std::to_string(worst.error),
          worst.a, worst.b, worst.error, total_value());
    }
    Panel worst = open.top();
    open.pop();
    open_value -= worst.value;
    open_error -= worst.error;

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      dead_value += worst.value;
      dead_error += worst.error;
      continue;
    }
    push(gk15(fn, worst.a, mid, result.evaluations));
    push(gk15(fn, mid, worst.b, result.evaluations));
    ++result.subdivisions;
  }

  result.value = total_value();
  result.error_estimate = total_error();
  return result;
}

double spherical_bessel_j1(double x) {
  if (!std::isfinite(x)) throw std::domain_error("j1 argument must be finite");
  const double ax = std::abs(x);
  if (ax < 0.25) {
    const double x2 = x * x;
    // x/3 - x^3/30 + x^5/840 - x^7/45360 + x^9/3991680
    return x * (1.0 / 3.0 +
                x2 * (-1.0 / 30.0 +
                      x2 * (1.0 / 840.0 +
                            x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0)))));
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

namespace {

// One additive piece of the exact tail decomposition
//   j1(x)^2 cos(chi x) = sum of trig(w x) * (c2/x^2 + c3/x^3 + c4/x^4)
// with w in {chi, |2 - chi|, 2 + chi}.
struct TailComponent {
  bool is_sin = false;
  double omega = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};

double power_law_tail(double from, const TailComponent& c) {
  return c.c2 / from + c.c3 / (2.0 * from * from) +
         c.c4 / (3.0 * from * from * from);
}

// Sum of integral_{cutoff}^inf trig(w x) (c2/x^2 + c3/x^3 + c4/x^4) dx by
// zero-aligned half-period panels, accelerated by repeated averaging of the
// partial sums.
double tail_component(const std::function<double(double)>& amplitude,
                      const TailComponent& c, const OscillatorySpec& spec,
                      double component_target) {
  if (c.omega < 1e-13) return c.is_sin ? 0.0 : power_law_tail(spec.initial_cutoff, c);

  auto f = [&](double x) {
    const double trig = c.is_sin ? std::sin(c.omega * x) : std::cos(c.omega * x);
    return trig * amplitude(x);
  };

  QuadratureSpec panel_spec;
  panel_spec.rel_tol = 1e-13;
  panel_spec.abs_tol = component_target * 1e-3;
  panel_spec.max_subdivisions = 200'000;

  const double width = spec.period_window / c.omega;
  // First zero of the trig factor at or after the cutoff.
  const double phase0 = c.is_sin ? 0.0 : 0.5 * std::numbers::pi;
  const double k0 = std::ceil((spec.initial_cutoff * c.omega - phase0) /
                              std::numbers::pi);
  double x0 = (phase0 + k0 * std::numbers::pi) / c.omega;
  if (x0 < spec.initial_cutoff) x0 = spec.initial_cutoff;

  double bridge = 0.0;
  if (x0 > spec.initial_cutoff)
    bridge = integrate(f, spec.initial_cutoff, x0, panel_spec).value;

  const int depth = std::max(1, spec.acceleration_depth);
  const int max_terms = depth + 20;
  std::vector<double> partial;
  partial.reserve(max_terms);
  double sum = 0.0;
  for (int k = 0; k < max_terms; ++k) {
    const double a = x0 + k * width;
    const double term = integrate(f, a, a + width, panel_spec).value;
    sum += term;
    partial.push_back(sum);
    if (k >= 3 && std::abs(term) < component_target / 16.0) break;
  }

  std::vector<double> row = partial;
  double estimate = row.back();
  double previous = estimate;
  const int passes = std::min<int>(depth, static_cast<int>(row.size()) - 1);
  for (int pass = 0; pass < passes; ++pass) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
    previous = estimate;
    estimate = row.back();
  }

  if (std::abs(estimate - previous) > 0.5 * component_target)
    throw NonConvergenceError(
        "oscillatory tail acceleration did not stabilize (frequency " +
            std::to_string(c.omega) + ", last change " +
            std::to_string(std::abs(estimate - previous)) + ")",
        x0, x0 + partial.size() * width, std::abs(estimate - previous),
        bridge + estimate);

  return bridge + estimate;
}

}  // namespace

double integrate_oscillatory_bessel(double chi, const OscillatorySpec& spec) {
  if (!std::isfinite(chi) || chi < 0.0)
    throw std::domain_error("chi must be finite and >= 0");
  if (!(spec.initial_cutoff > 0.0) || !(spec.target_abs_err > 0.0) ||
      !(spec.period_window > 0.0))
    throw std::invalid_argument("oscillatory spec fields must be positive");

  QuadratureSpec head_spec;
  head_spec.rel_tol = 1e-12;
  head_spec.abs_tol = std::min(1e-12, 0.1 * spec.target_abs_err);
  head_spec.max_subdivisions = 500'000;
  auto head_fn = [chi](double x) {
    const double j = spherical_bessel_j1(x);
    return j * j * std::cos(chi * x);
  };
  const double head =
      integrate(head_fn, 0.0, spec.initial_cutoff, head_spec).value;

  // j1^2 = 1/(2x^2) + 1/(2x^4) + cos(2x)(1/(2x^2) - 1/(2x^4)) - sin(2x)/x^3;
  // multiplying by cos(chi x) and splitting the products gives components at
  // the sum and difference frequencies.  sin((2-chi)x) flips sign past chi=2.
  const double diff = 2.0 - chi;
  const double sin_diff_sign = diff >= 0.0 ? 1.0 : -1.0;
  const TailComponent components[] = {
      {false, chi, 0.5, 0.0, 0.5},
      {false, std::abs(diff), 0.25, 0.0, -0.25},
      {false, 2.0 + chi, 0.25, 0.0, -0.25},
      {true, std::abs(diff), 0.0, -0.5 * sin_diff_sign, 0.0},
      {true, 2.0 + chi, 0.0, -0.5, 0.0},
  };

  const double component_target = spec.target_abs_err / 8.0;
  double tail = 0.0;
  for (const TailComponent& c : components) {
    auto amplitude = [&c](double x) {
      const double inv = 1.0 / x;
      const double inv2 = inv * inv;
      return inv2 * (c.c2 + inv * (c.c3 + inv * c.c4));
    };
    tail += tail_component(amplitude, c, spec, component_target);
  }

  return head + tail;
}

}  // namespace selfforce::quadrature
