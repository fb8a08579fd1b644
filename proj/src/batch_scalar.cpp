#include <cstddef>

#include "selfforce/batch.hpp"
#include "selfforce/detail/kernel_math.hpp"

// Reference backend: plain element-at-a-time loops over the shared
// elementwise formulas.  Compiled with -ffp-contract=off.

namespace selfforce::batch {

namespace {

template <double (*Elem)(double)>
void run(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = Elem(in[i]);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      run<detail::self_force_kernel_elem<double>>,
      run<detail::displacement_force_kernel_elem<double>>,
      run<detail::geometric_factor_elem<double>>,
      run<detail::radiation_reaction_force_br_elem<double>>,
  };
  return ops;
}

}  // namespace selfforce::batch
