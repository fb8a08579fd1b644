#pragma once

// Elementwise kernel formulas shared by the scalar entry points and every
// batch backend.  Each backend instantiates exactly this operation sequence,
// so lanes agree bit for bit with the scalar path as long as the enclosing
// translation units are compiled with -ffp-contract=off and the vector type
// avoids fused multiply-add.

namespace selfforce::detail {

inline double select(bool mask, double a, double b) { return mask ? a : b; }

// -(chi^3)/2 + 3 chi - 3 on [0, 2), -1 beyond, written as
// (chi - 2)(2 - 2 chi - chi^2)/2 - 1 with a fixed evaluation order.
template <class V>
inline V self_force_kernel_elem(V chi) {
  const V two{2.0};
  V p = (two - (chi + chi)) - chi * chi;
  V ramp = (V{0.5} * (chi - two)) * p;
  return select(chi < two, ramp, V{0.0}) - V{1.0};
}

// (2 - xi)(2 - 2 xi - xi^2)/4 - 1 on [0, 2), -1 beyond.
template <class V>
inline V displacement_force_kernel_elem(V xi) {
  const V two{2.0};
  V p = (two - (xi + xi)) - xi * xi;
  V ramp = (V{0.25} * (two - xi)) * p;
  return select(xi < two, ramp, V{0.0}) - V{1.0};
}

// -(4 + kappa)(2 - kappa)^2 / (8 kappa) - 1/kappa on (0, 2), -1/kappa beyond.
template <class V>
inline V geometric_factor_elem(V kappa) {
  const V two{2.0};
  V d = two - kappa;
  V ramp = (V{0.125} * (V{4.0} + kappa)) * (d * d);
  V inv = V{1.0} / kappa;
  return -(select(kappa < two, ramp, V{0.0}) * inv + inv);
}

// -(3/16)(4 + kappa)(2 - kappa)^2 on (0, 2), exactly +0 beyond.
template <class V>
inline V radiation_reaction_force_br_elem(V kappa) {
  const V two{2.0};
  V d = two - kappa;
  V ramp = (V{0.1875} * (V{4.0} + kappa)) * (d * d);
  return select(kappa < two, -ramp, V{0.0});
}

}  // namespace selfforce::detail
