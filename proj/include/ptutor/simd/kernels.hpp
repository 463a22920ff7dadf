#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace ptutor::simd {

// Both kernels evaluate every output element with the same sequence of IEEE
// operations in every variant, so results agree bit for bit.

/// out[j] = sum over features f of (cols[f*stride + j] - cols[f*stride + i])^2,
/// accumulated in feature order, for j in [0, n).
using SqDistRowFn = void (*)(const double* cols, std::size_t stride, std::size_t features,
                             std::size_t n, std::size_t i, double* out);

/// Ward update on squared distances after merging clusters a and b (sizes
/// na, nb, squared distance dab) for every other cluster k:
/// out[k] = ((na+nk)*da[k] + (nb+nk)*db[k] - nk*dab) / (na+nb+nk).
using WardRowFn = void (*)(const double* da, const double* db, const double* nk, double na,
                           double nb, double dab, std::size_t n, double* out);

struct Kernels {
  std::string_view name;
  SqDistRowFn sq_dist_row;
  WardRowFn ward_row;
};

const Kernels& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const Kernels* avx2_kernels();
/// Best variant for this CPU; chosen once. PTUTOR_SIMD=scalar forces scalar.
const Kernels& active_kernels();

}  // namespace ptutor::simd
