#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Array forms of the closed-form kernels with runtime-dispatched SIMD
// backends.  Inputs are not range-checked; callers validate domains before
// batching (kernels.hpp has the scalar, checked forms).  Every backend
// produces bitwise-identical output for identical input.

namespace selfforce::batch {

enum class Backend { scalar, avx2 };

using KernelFn = void (*)(const double* in, double* out, std::size_t n);

struct Ops {
  KernelFn self_force_kernel;
  KernelFn displacement_force_kernel;
  KernelFn geometric_factor;
  KernelFn radiation_reaction_force_br;
};

bool available(Backend backend);
// Throws std::invalid_argument when the backend is not available here.
const Ops& ops(Backend backend);
// Best available backend on this machine (decided once).
Backend active();
std::string_view name(Backend backend);

// Convenience wrappers over ops(active()); out.size() must match in.size().
void self_force_kernel(std::span<const double> in, std::span<double> out);
void displacement_force_kernel(std::span<const double> in,
                               std::span<double> out);
void geometric_factor(std::span<const double> in, std::span<double> out);
void radiation_reaction_force_br(std::span<const double> in,
                                 std::span<double> out);

}  // namespace selfforce::batch
