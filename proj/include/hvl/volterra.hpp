#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "hvl/hardy.hpp"
#include "hvl/series.hpp"

namespace hvl {

/// The symbol g of S_g, T_g and M_g, with a grid estimate of its sup norm.
class Symbol {
 public:
  /// M = 0 selects max(default_grid_size(degree), 4096).
  explicit Symbol(ComplexSeries g, std::size_t M = 0);

  const ComplexSeries& series() const { return g_; }
  std::size_t degree() const { return g_.degree(); }
  double sup_estimate() const { return sup_; }

  /// Same symbol with the estimate raised to the maximum over an M-point grid.
  Symbol refined(std::size_t M) const;

 private:
  Symbol(ComplexSeries g, double sup) : g_(std::move(g)), sup_(sup) {}
  ComplexSeries g_;
  double sup_;
};

/// (S_g f)(z) = int_0^z f'(w) g(w) dw, truncated at out_degree.
ComplexSeries apply_Sg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree);

/// (T_g f)(z) = int_0^z f(w) g'(w) dw, truncated at out_degree.
ComplexSeries apply_Tg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree);

/// (M_g f)(z) = g(z) f(z), truncated at out_degree.
ComplexSeries apply_Mg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree);

/// Adjoint of the degree-N truncation of S_g in the H^2 coefficient inner product.
ComplexSeries apply_Sg_adjoint(const Symbol& g, const ComplexSeries& y, std::size_t N);

/// R_{lambda,g} h = int_0^z h'(w) / (1 - g(w)/lambda) dw + h(0), the solution f of
/// f - S_g f / lambda = h. Throws ZeroLambda for lambda = 0 and SingularAtOrigin
/// when 1 - g(0)/lambda vanishes numerically. Boundedness on H^p (lambda outside
/// the closure of g(D)) is the caller's concern.
ComplexSeries resolvent(const Symbol& g, cplx lambda, const ComplexSeries& h,
                        std::size_t out_degree);

/// (I - S_g / lambda) f, truncated at out_degree.
ComplexSeries shifted_identity(const Symbol& g, cplx lambda, const ComplexSeries& f,
                               std::size_t out_degree);

/// S_g on coefficients 0..N: entry (n+m, n) = n g_m / (n+m).
struct OperatorMatrix {
  std::size_t N = 0;
  Eigen::MatrixXcd entries;
};

OperatorMatrix matrix(const Symbol& g, std::size_t N);

/// max over probes of ||S_g probe||_p / ||probe||_p, a lower bound for the operator
/// norm. M = 0 picks the default grid for each probe's output degree.
double norm_lower_bound(const Symbol& g, Exponent p, std::span<const ComplexSeries> probes,
                        std::size_t M = 0);

struct PowerIterationResult {
  double sigma = 0.0;
  int iterations = 0;
};

/// Largest singular value of matrix(g, N) by power iteration on A^H A, applied in
/// banded form. Stops when the relative change falls below tol; throws
/// IterationCapReached (carrying the last estimate) at the cap.
PowerIterationResult norm_estimate_h2(const Symbol& g, std::size_t N, int iterations,
                                      double tol = 1e-8);

}  // namespace hvl
