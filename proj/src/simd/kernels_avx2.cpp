#include <immintrin.h>

#include "ptutor/simd/kernels.hpp"

namespace ptutor::simd::detail {

// Separate mul and add (no FMA) so each lane rounds exactly like the scalar loop.

void avx2_sq_dist_row(const double* cols, std::size_t stride, std::size_t features, std::size_t n,
                      std::size_t i, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t f = 0; f < features; ++f) {
    const double* c = cols + f * stride;
    const double xi = c[i];
    const __m256d vi = _mm256_set1_pd(xi);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(c + j), vi);
      _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j), _mm256_mul_pd(d, d)));
    }
    for (; j < n; ++j) {
      const double d = c[j] - xi;
      out[j] = out[j] + d * d;
    }
  }
}

void avx2_ward_row(const double* da, const double* db, const double* nk, double na, double nb,
                   double dab, std::size_t n, double* out) {
  const __m256d vna = _mm256_set1_pd(na);
  const __m256d vnb = _mm256_set1_pd(nb);
  const __m256d vdab = _mm256_set1_pd(dab);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vk = _mm256_loadu_pd(nk + k);
    const __m256d ta = _mm256_mul_pd(_mm256_add_pd(vna, vk), _mm256_loadu_pd(da + k));
    const __m256d tb = _mm256_mul_pd(_mm256_add_pd(vnb, vk), _mm256_loadu_pd(db + k));
    const __m256d num = _mm256_sub_pd(_mm256_add_pd(ta, tb), _mm256_mul_pd(vk, vdab));
    const __m256d den = _mm256_add_pd(_mm256_add_pd(vna, vnb), vk);
    _mm256_storeu_pd(out + k, _mm256_div_pd(num, den));
  }
  for (; k < n; ++k) {
    const double num = (na + nk[k]) * da[k] + (nb + nk[k]) * db[k] - nk[k] * dab;
    out[k] = num / (na + nb + nk[k]);
  }
}

}  // namespace ptutor::simd::detail
