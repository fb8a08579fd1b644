#include <stdexcept>

#include "selfforce/batch.hpp"

namespace selfforce::batch {

const Ops& scalar_ops();
#ifdef SELFFORCE_HAVE_AVX2
const Ops& avx2_ops();
#endif

bool available(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef SELFFORCE_HAVE_AVX2
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

const Ops& ops(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return scalar_ops();
    case Backend::avx2:
#ifdef SELFFORCE_HAVE_AVX2
      if (available(Backend::avx2)) return avx2_ops();
#endif
      break;
  }
  throw std::invalid_argument("requested kernel batch backend is unavailable");
}

Backend active() {
  static const Backend chosen =
      available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
  return chosen;
}

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

namespace {

void check_sizes(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size())
    throw std::invalid_argument("batch kernel spans must have equal size");
}

}  // namespace

void self_force_kernel(std::span<const double> in, std::span<double> out) {
  check_sizes(in, out);
  ops(active()).self_force_kernel(in.data(), out.data(), in.size());
}

void displacement_force_kernel(std::span<const double> in,
                               std::span<double> out) {
  check_sizes(in, out);
  ops(active()).displacement_force_kernel(in.data(), out.data(), in.size());
}

void geometric_factor(std::span<const double> in, std::span<double> out) {
  check_sizes(in, out);
  ops(active()).geometric_factor(in.data(), out.data(), in.size());
}

void radiation_reaction_force_br(std::span<const double> in,
                                 std::span<double> out) {
  check_sizes(in, out);
  ops(active()).radiation_reaction_force_br(in.data(), out.data(), in.size());
}

}  // namespace selfforce::batch
