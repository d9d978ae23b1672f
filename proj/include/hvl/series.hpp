#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hvl {

using cplx = std::complex<double>;

/// Truncated Taylor series sum_k c_k z^k of a function analytic on the unit disk.
///
/// Coefficients are always finite; the zero series is stored as the single
/// coefficient 0, so degree() is the stored length minus one. Trailing zero
/// coefficients are kept: the stored length is the working truncation.
class ComplexSeries {
 public:
  ComplexSeries();
  explicit ComplexSeries(std::vector<cplx> coeffs);
  ComplexSeries(std::initializer_list<cplx> coeffs);

  static ComplexSeries constant(cplx c);
  static ComplexSeries monomial(std::size_t k, cplx c = 1.0);

  std::size_t degree() const { return c_.size() - 1; }
  std::span<const cplx> coeffs() const { return c_; }

  /// Coefficient k, or 0 past the stored degree.
  cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }

  /// Keeps coefficients 0..deg, padding with zeros when deg exceeds the degree.
  ComplexSeries truncated(std::size_t deg) const;

  bool is_zero() const;

  friend ComplexSeries operator+(const ComplexSeries& f, const ComplexSeries& g);
  friend ComplexSeries operator-(const ComplexSeries& f, const ComplexSeries& g);
  friend ComplexSeries operator*(cplx s, const ComplexSeries& f);

 private:
  std::vector<cplx> c_;
};

/// Nested evaluation; |z| may exceed 1 by at most 1e-12.
cplx eval(const ComplexSeries& f, cplx z);

ComplexSeries derivative(const ComplexSeries& f);
ComplexSeries antiderivative(const ComplexSeries& f);

/// Cauchy product truncated at out_degree.
ComplexSeries product(const ComplexSeries& f, const ComplexSeries& g, std::size_t out_degree);

/// Formal reciprocal through out_degree; throws SingularAtOrigin when |f(0)| <= 1e-12.
ComplexSeries reciprocal(const ComplexSeries& f, std::size_t out_degree);

/// max_k |f_k - g_k| over the union of the stored ranges.
double max_coeff_diff(const ComplexSeries& f, const ComplexSeries& g);

/// max_k |f_k - g_k| for k = 0..through.
double max_coeff_diff(const ComplexSeries& f, const ComplexSeries& g, std::size_t through);

inline constexpr double kOriginSingularityTol = 1e-12;

}  // namespace hvl
