#include <algorithm>
#include <cmath>

#include "hvl/simd.hpp"

namespace hvl::simd {
namespace {

inline double pow_from_abs2(double abs2, double p) {
  if (p == 2.0) return abs2;
  if (p == 1.0) return std::sqrt(abs2);
  if (abs2 == 0.0) return 0.0;
  return std::pow(abs2, 0.5 * p);
}

double max_abs2(const cplx* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::norm(v[j]));
  return m;
}

double sum_abs_pow(const cplx* v, std::size_t n, double p, double scale) {
  const double s2 = scale * scale;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += pow_from_abs2(std::norm(v[j]) * s2, p);
  return acc;
}

double weighted_sum_abs_pow(const cplx* v, const double* w, std::size_t n, double p,
                            double scale) {
  const double s2 = scale * scale;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += w[j] * pow_from_abs2(std::norm(v[j]) * s2, p);
  return acc;
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = cplx(y[j].real() + (ar * xr - ai * xi), y[j].imag() + (ar * xi + ai * xr));
  }
}

void horner_many(const cplx* coeffs, std::size_t ncoef, const cplx* z, cplx* out,
                 std::size_t npts) {
  for (std::size_t j = 0; j < npts; ++j) {
    double accr = 0.0, acci = 0.0;
    const double zr = z[j].real(), zi = z[j].imag();
    for (std::size_t k = ncoef; k-- > 0;) {
      const double tr = accr * zr - acci * zi + coeffs[k].real();
      const double ti = accr * zi + acci * zr + coeffs[k].imag();
      accr = tr;
      acci = ti;
    }
    out[j] = cplx(accr, acci);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",    &max_abs2, &sum_abs_pow, &weighted_sum_abs_pow,
                                 &caxpy, &horner_many};
  return table;
}

}  // namespace hvl::simd
