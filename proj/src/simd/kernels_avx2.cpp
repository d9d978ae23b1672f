// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hvl/simd.hpp"

namespace hvl::simd {
namespace {

inline const double* as_doubles(const cplx* v) { return reinterpret_cast<const double*>(v); }
inline double* as_doubles(cplx* v) { return reinterpret_cast<double*>(v); }

// |v|^2 for 4 consecutive complex values, packed as (a0, a1, a2, a3).
inline __m256d abs2_x4(const double* d) {
  const __m256d lo = _mm256_loadu_pd(d);      // r0 i0 r1 i1
  const __m256d hi = _mm256_loadu_pd(d + 4);  // r2 i2 r3 i3
  const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
  // hadd interleaves 128-bit lanes: (a0, a2, a1, a3)
  return _mm256_permute4x64_pd(sq, _MM_SHUFFLE(3, 1, 2, 0));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double pow_from_abs2(double abs2, double p) {
  if (abs2 == 0.0) return 0.0;
  return std::pow(abs2, 0.5 * p);
}

double max_abs2(const cplx* v, std::size_t n) {
  const double* d = as_doubles(v);
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) m = _mm256_max_pd(m, abs2_x4(d + 2 * j));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; j < n; ++j) out = std::max(out, std::norm(v[j]));
  return out;
}

double weighted_sum_abs_pow_impl(const cplx* v, const double* w, std::size_t n, double p,
                                 double scale) {
  const double* d = as_doubles(v);
  const __m256d s2 = _mm256_set1_pd(scale * scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  if (p == 2.0 || p == 1.0) {
    for (; j + 4 <= n; j += 4) {
      __m256d a = _mm256_mul_pd(abs2_x4(d + 2 * j), s2);
      if (p == 1.0) a = _mm256_sqrt_pd(a);
      const __m256d wv = w ? _mm256_loadu_pd(w + j) : _mm256_set1_pd(1.0);
      acc = _mm256_fmadd_pd(wv, a, acc);
    }
  } else {
    alignas(32) double lanes[4];
    for (; j + 4 <= n; j += 4) {
      _mm256_store_pd(lanes, _mm256_mul_pd(abs2_x4(d + 2 * j), s2));
      for (double& x : lanes) x = pow_from_abs2(x, p);
      const __m256d wv = w ? _mm256_loadu_pd(w + j) : _mm256_set1_pd(1.0);
      acc = _mm256_fmadd_pd(wv, _mm256_load_pd(lanes), acc);
    }
  }
  double out = hsum(acc);
  const double s2s = scale * scale;
  for (; j < n; ++j) {
    const double a = std::norm(v[j]) * s2s;
    const double t = p == 2.0 ? a : (p == 1.0 ? std::sqrt(a) : pow_from_abs2(a, p));
    out += (w ? w[j] : 1.0) * t;
  }
  return out;
}

double sum_abs_pow(const cplx* v, std::size_t n, double p, double scale) {
  return weighted_sum_abs_pow_impl(v, nullptr, n, p, scale);
}

double weighted_sum_abs_pow(const cplx* v, const double* w, std::size_t n, double p,
                            double scale) {
  return weighted_sum_abs_pow_impl(v, w, n, p, scale);
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // (xi, xr) pairs
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * j), prod));
  }
  for (; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = cplx(y[j].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[j].imag() + (alpha.real() * xi + alpha.imag() * xr));
  }
}

void horner_many(const cplx* coeffs, std::size_t ncoef, const cplx* z, cplx* out,
                 std::size_t npts) {
  std::size_t j = 0;
  for (; j + 4 <= npts; j += 4) {
    const __m256d zr = _mm256_setr_pd(z[j].real(), z[j + 1].real(), z[j + 2].real(),
                                      z[j + 3].real());
    const __m256d zi = _mm256_setr_pd(z[j].imag(), z[j + 1].imag(), z[j + 2].imag(),
                                      z[j + 3].imag());
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    for (std::size_t k = ncoef; k-- > 0;) {
      const __m256d cr = _mm256_set1_pd(coeffs[k].real());
      const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
      const __m256d tr = _mm256_fmsub_pd(accr, zr, _mm256_fmsub_pd(acci, zi, cr));
      const __m256d ti = _mm256_fmadd_pd(accr, zi, _mm256_fmadd_pd(acci, zr, ci));
      accr = tr;
      acci = ti;
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, accr);
    _mm256_store_pd(im, acci);
    for (int l = 0; l < 4; ++l) out[j + l] = cplx(re[l], im[l]);
  }
  if (j < npts) scalar_kernels().horner_many(coeffs, ncoef, z + j, out + j, npts - j);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",  &max_abs2, &sum_abs_pow, &weighted_sum_abs_pow,
                                 &caxpy, &horner_many};
  return table;
}

}  // namespace hvl::simd
