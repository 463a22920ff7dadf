#include "ptutor/simd/kernels.hpp"

namespace ptutor::simd {

namespace {

void sq_dist_row(const double* cols, std::size_t stride, std::size_t features, std::size_t n,
                 std::size_t i, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t f = 0; f < features; ++f) {
    const double* c = cols + f * stride;
    const double xi = c[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double d = c[j] - xi;
      out[j] = out[j] + d * d;
    }
  }
}

void ward_row(const double* da, const double* db, const double* nk, double na, double nb, double dab,
              std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double num = (na + nk[k]) * da[k] + (nb + nk[k]) * db[k] - nk[k] * dab;
    out[k] = num / (na + nb + nk[k]);
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", &sq_dist_row, &ward_row};
  return k;
}

}  // namespace ptutor::simd
