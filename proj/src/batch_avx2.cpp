#include <cstddef>

#include "selfforce/batch.hpp"
#include "selfforce/detail/kernel_math.hpp"

// AVX2 backend: four lanes per step through the shared elementwise
// formulas.  Uses separate mul/add (no FMA) and is compiled with
// -ffp-contract=off so results match the scalar backend bit for bit.

#if defined(__AVX2__)

#include <immintrin.h>

namespace selfforce::batch {

namespace {

struct Vec4d {
  __m256d v;
  Vec4d() = default;
  Vec4d(double x) : v(_mm256_set1_pd(x)) {}
  Vec4d(__m256d x) : v(x) {}
};

inline Vec4d operator+(Vec4d a, Vec4d b) { return _mm256_add_pd(a.v, b.v); }
inline Vec4d operator-(Vec4d a, Vec4d b) { return _mm256_sub_pd(a.v, b.v); }
inline Vec4d operator*(Vec4d a, Vec4d b) { return _mm256_mul_pd(a.v, b.v); }
inline Vec4d operator/(Vec4d a, Vec4d b) { return _mm256_div_pd(a.v, b.v); }
inline Vec4d operator-(Vec4d a) {
  return _mm256_xor_pd(a.v, _mm256_set1_pd(-0.0));
}
inline Vec4d operator<(Vec4d a, Vec4d b) {
  return _mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ);
}
inline Vec4d select(Vec4d mask, Vec4d a, Vec4d b) {
  return _mm256_blendv_pd(b.v, a.v, mask.v);
}

template <Vec4d (*VecElem)(Vec4d), double (*ScalarElem)(double)>
void run(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    Vec4d x = _mm256_loadu_pd(in + i);
    _mm256_storeu_pd(out + i, VecElem(x).v);
  }
  for (; i < n; ++i) out[i] = ScalarElem(in[i]);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{
      run<detail::self_force_kernel_elem<Vec4d>,
          detail::self_force_kernel_elem<double>>,
      run<detail::displacement_force_kernel_elem<Vec4d>,
          detail::displacement_force_kernel_elem<double>>,
      run<detail::geometric_factor_elem<Vec4d>,
          detail::geometric_factor_elem<double>>,
      run<detail::radiation_reaction_force_br_elem<Vec4d>,
          detail::radiation_reaction_force_br_elem<double>>,
  };
  return ops;
}

}  // namespace selfforce::batch

#endif  // __AVX2__
