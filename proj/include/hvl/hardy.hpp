#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hvl/series.hpp"

namespace hvl {

/// Hardy-space exponent p in (0, inf).
class Exponent {
 public:
  explicit Exponent(double p);
  double value() const { return p_; }
  bool operator==(const Exponent&) const = default;

 private:
  double p_;
};

/// A_eps = {e^{i theta} : |e^{i theta} - 1| < eps}, 0 < eps <= 2.
class Arc {
 public:
  explicit Arc(double eps);
  double epsilon() const { return eps_; }
  double half_angle() const { return half_angle_; }
  bool contains(double theta) const;

 private:
  double eps_;
  double half_angle_;
};

/// Samples f(r e^{2 pi i j / M}), j = 0..M-1.
struct BoundaryGrid {
  double radius = 1.0;
  std::vector<cplx> samples;

  std::size_t size() const { return samples.size(); }
  double theta(std::size_t j) const;
};

/// M = max(4 * degree, 512): the default coupling of grid size to truncation.
std::size_t default_grid_size(std::size_t degree);

/// Uses an FFT of the folded, radius-scaled coefficients for large inputs and
/// direct nested evaluation otherwise; both agree with eval() to rounding.
BoundaryGrid boundary_samples(const ComplexSeries& f, std::size_t M, double r = 1.0);

/// ((1/n) sum |v_j|^p)^{1/p}, scaled internally against overflow.
double lp_mean(std::span<const cplx> v, Exponent p);

double hp_norm(const ComplexSeries& f, Exponent p, std::size_t M, double r = 1.0);
double hp_norm(const BoundaryGrid& grid, Exponent p);

/// Grid maximum of |f| on the unit circle (a lower bound for the sup norm).
double hinf_norm(const ComplexSeries& f, std::size_t M);

/// (1/M) sum over grid points inside A_eps of |sample|^p. The grid must sit on
/// the unit circle, and the arc must contain a grid point besides theta = 0.
double arc_integral(const BoundaryGrid& grid, Exponent p, const Arc& arc);

/// The same sum over the grid points outside A_eps.
double arc_complement_integral(const BoundaryGrid& grid, Exponent p, const Arc& arc);

/// phi_a(z) = (a - z) / (1 - conj(a) z).
cplx mobius(cplx a, cplx z);

struct QuadratureSpec {
  int radial_nodes = 32;
  int angular_nodes = 256;
};

/// int_D |f'(z)|^p (1 - |z|^2)^{p-1} (1 - |phi_a(z)|^2) dA(z), normalized area.
/// Gauss–Legendre in r times the uniform rule in theta; for p < 1 the radial
/// node count is doubled.
double garsia_seminorm(const ComplexSeries& f, Exponent p, cplx a, const QuadratureSpec& q);

double sup_garsia(const ComplexSeries& f, Exponent p, std::span<const cplx> a_grid,
                  const QuadratureSpec& q);

}  // namespace hvl
