#include "ptutor/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace ptutor::simd {

#if defined(PTUTOR_HAVE_AVX2_TU)
namespace detail {
void avx2_sq_dist_row(const double*, std::size_t, std::size_t, std::size_t, std::size_t, double*);
void avx2_ward_row(const double*, const double*, const double*, double, double, double, std::size_t,
                   double*);
}  // namespace detail
#endif

const Kernels* avx2_kernels() {
#if defined(PTUTOR_HAVE_AVX2_TU)
  static const bool supported = __builtin_cpu_supports("avx2");
  static const Kernels k{"avx2", &detail::avx2_sq_dist_row, &detail::avx2_ward_row};
  return supported ? &k : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() {
  static const Kernels& chosen = [&]() -> const Kernels& {
    const char* force = std::getenv("PTUTOR_SIMD");
    if (force != nullptr && std::string_view(force) == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace ptutor::simd
