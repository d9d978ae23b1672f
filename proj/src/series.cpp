#include "hvl/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hvl/error.hpp"
#include "hvl/simd.hpp"

namespace hvl {
namespace {

void check_finite(const std::vector<cplx>& c) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!std::isfinite(c[k].real()) || !std::isfinite(c[k].imag())) {
      fail(ErrorCode::NonFinite, "series coefficient " + std::to_string(k) + " is not finite");
    }
  }
}

}  // namespace

ComplexSeries::ComplexSeries() : c_{cplx{}} {}

ComplexSeries::ComplexSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(cplx{});
  check_finite(c_);
}

ComplexSeries::ComplexSeries(std::initializer_list<cplx> coeffs)
    : ComplexSeries(std::vector<cplx>(coeffs)) {}

ComplexSeries ComplexSeries::constant(cplx c) { return ComplexSeries({c}); }

ComplexSeries ComplexSeries::monomial(std::size_t k, cplx c) {
  std::vector<cplx> v(k + 1);
  v[k] = c;
  return ComplexSeries(std::move(v));
}

ComplexSeries ComplexSeries::truncated(std::size_t deg) const {
  std::vector<cplx> v(deg + 1);
  std::copy_n(c_.begin(), std::min(c_.size(), deg + 1), v.begin());
  return ComplexSeries(std::move(v));
}

bool ComplexSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](cplx c) { return c == cplx{}; });
}

ComplexSeries operator+(const ComplexSeries& f, const ComplexSeries& g) {
  std::vector<cplx> v(std::max(f.c_.size(), g.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] + g[k];
  return ComplexSeries(std::move(v));
}

ComplexSeries operator-(const ComplexSeries& f, const ComplexSeries& g) {
  std::vector<cplx> v(std::max(f.c_.size(), g.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] - g[k];
  return ComplexSeries(std::move(v));
}

ComplexSeries operator*(cplx s, const ComplexSeries& f) {
  std::vector<cplx> v(f.c_);
  for (auto& c : v) c *= s;
  return ComplexSeries(std::move(v));
}

cplx eval(const ComplexSeries& f, cplx z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    fail(ErrorCode::DomainError, "series evaluated outside the closed unit disk");
  }
  cplx out;
  simd::kernels().horner_many(f.coeffs().data(), f.coeffs().size(), &z, &out, 1);
  return out;
}

ComplexSeries derivative(const ComplexSeries& f) {
  const auto c = f.coeffs();
  if (c.size() == 1) return ComplexSeries();
  std::vector<cplx> v(c.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k + 1) * c[k + 1];
  return ComplexSeries(std::move(v));
}

ComplexSeries antiderivative(const ComplexSeries& f) {
  const auto c = f.coeffs();
  std::vector<cplx> v(c.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k) v[k + 1] = c[k] / static_cast<double>(k + 1);
  return ComplexSeries(std::move(v));
}

ComplexSeries product(const ComplexSeries& f, const ComplexSeries& g, std::size_t out_degree) {
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  std::vector<cplx> v(out_degree + 1);
  const auto& k = simd::kernels();
  const std::size_t fmax = std::min(fc.size() - 1, out_degree);
  for (std::size_t i = 0; i <= fmax; ++i) {
    if (fc[i] == cplx{}) continue;
    const std::size_t len = std::min(gc.size(), out_degree + 1 - i);
    k.caxpy(fc[i], gc.data(), v.data() + i, len);
  }
  return ComplexSeries(std::move(v));
}

ComplexSeries reciprocal(const ComplexSeries& f, std::size_t out_degree) {
  const auto fc = f.coeffs();
  if (std::abs(fc[0]) <= kOriginSingularityTol) {
    fail(ErrorCode::SingularAtOrigin, "reciprocal of a series vanishing at the origin");
  }
  std::vector<cplx> r(out_degree + 1);
  const cplx inv0 = 1.0 / fc[0];
  r[0] = inv0;
  for (std::size_t k = 1; k <= out_degree; ++k) {
    cplx acc;
    const std::size_t jmax = std::min(k, fc.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += fc[j] * r[k - j];
    r[k] = -acc * inv0;
  }
  return ComplexSeries(std::move(r));
}

double max_coeff_diff(const ComplexSeries& f, const ComplexSeries& g) {
  return max_coeff_diff(f, g, std::max(f.degree(), g.degree()));
}

double max_coeff_diff(const ComplexSeries& f, const ComplexSeries& g, std::size_t through) {
  double m = 0.0;
  for (std::size_t k = 0; k <= through; ++k) m = std::max(m, std::abs(f[k] - g[k]));
  return m;
}

}  // namespace hvl
