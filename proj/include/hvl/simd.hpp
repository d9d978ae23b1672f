#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace hvl::simd {

using cplx = std::complex<double>;

// Inner loops shared by the quadrature and series code. Every entry has a scalar
// reference implementation; vector variants must agree with it to rounding.
struct KernelTable {
  std::string_view name;

  // max_j |v_j|^2
  double (*max_abs2)(const cplx* v, std::size_t n);

  // sum_j (|v_j| * scale)^p
  double (*sum_abs_pow)(const cplx* v, std::size_t n, double p, double scale);

  // sum_j w_j (|v_j| * scale)^p
  double (*weighted_sum_abs_pow)(const cplx* v, const double* w, std::size_t n, double p,
                                 double scale);

  // y += alpha * x
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  // out_j = sum_k coeffs_k z_j^k, nested evaluation
  void (*horner_many)(const cplx* coeffs, std::size_t ncoef, const cplx* z, cplx* out,
                      std::size_t npts);
};

const KernelTable& scalar_kernels();

/// AVX2/FMA variants, or nullptr when the build or the CPU lacks them.
const KernelTable* avx2_kernels();

/// Table chosen once at first use: AVX2 when available, unless the environment
/// variable HVL_SIMD=scalar forces the reference path.
const KernelTable& kernels();

}  // namespace hvl::simd
