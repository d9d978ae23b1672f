#include "hvl/hardy.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "hvl/error.hpp"
#include "hvl/quadrature.hpp"
#include "hvl/simd.hpp"

namespace hvl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::vector<cplx> samples_by_fft(const ComplexSeries& f, std::size_t M, double r) {
  std::vector<cplx> buf(M);
  const auto c = f.coeffs();
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    buf[k % M] += c[k] * rk;
    rk *= r;
  }
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  Plan plan(fftw_plan_dft_1d(static_cast<int>(M), data, data, FFTW_BACKWARD, FFTW_ESTIMATE));
  fftw_execute(plan.get());
  return buf;
}

std::vector<cplx> samples_direct(const ComplexSeries& f, std::size_t M, double r) {
  std::vector<cplx> z(M), out(M);
  for (std::size_t j = 0; j < M; ++j) z[j] = std::polar(r, kTwoPi * j / M);
  const auto c = f.coeffs();
  simd::kernels().horner_many(c.data(), c.size(), z.data(), out.data(), M);
  return out;
}

// Number of grid points j in 1..M/2 with 2 sin(pi j / M) < eps.
std::size_t arc_reach(std::size_t M, const Arc& arc) {
  std::size_t J = 0;
  while (J + 1 <= M / 2 && 2.0 * std::sin(std::numbers::pi * (J + 1) / M) < arc.epsilon()) ++J;
  return J;
}

double scaled_sum(std::span<const cplx> v, double p) {
  if (v.empty()) return 0.0;
  const auto& k = simd::kernels();
  const double m = std::sqrt(k.max_abs2(v.data(), v.size()));
  if (m == 0.0) return 0.0;
  return std::pow(m, p) * k.sum_abs_pow(v.data(), v.size(), p, 1.0 / m);
}

}  // namespace

Exponent::Exponent(double p) : p_(p) {
  require(std::isfinite(p) && p > 0.0, "exponent p must be positive and finite");
}

Arc::Arc(double eps) : eps_(eps), half_angle_(arc_half_angle(eps)) {}

bool Arc::contains(double theta) const {
  return 2.0 * std::abs(std::sin(0.5 * theta)) < eps_;
}

double BoundaryGrid::theta(std::size_t j) const { return kTwoPi * j / samples.size(); }

std::size_t default_grid_size(std::size_t degree) { return std::max<std::size_t>(4 * degree, 512); }

BoundaryGrid boundary_samples(const ComplexSeries& f, std::size_t M, double r) {
  require(M >= 1, "boundary grid needs at least one sample");
  require(r > 0.0 && r <= 1.0, "sampling radius must lie in (0, 1]");
  const std::size_t work = M * f.coeffs().size();
  BoundaryGrid g;
  g.radius = r;
  g.samples = (M >= 64 && work > (1u << 14)) ? samples_by_fft(f, M, r) : samples_direct(f, M, r);
  return g;
}

double lp_mean(std::span<const cplx> v, Exponent p) {
  require(!v.empty(), "mean over an empty sample set");
  return std::pow(scaled_sum(v, p.value()) / static_cast<double>(v.size()), 1.0 / p.value());
}

double hp_norm(const BoundaryGrid& grid, Exponent p) { return lp_mean(grid.samples, p); }

double hp_norm(const ComplexSeries& f, Exponent p, std::size_t M, double r) {
  return hp_norm(boundary_samples(f, M, r), p);
}

double hinf_norm(const ComplexSeries& f, std::size_t M) {
  const auto g = boundary_samples(f, M, 1.0);
  return std::sqrt(simd::kernels().max_abs2(g.samples.data(), g.size()));
}

double arc_integral(const BoundaryGrid& grid, Exponent p, const Arc& arc) {
  require(grid.radius == 1.0, "arc integrals need samples on the unit circle");
  const std::size_t M = grid.size();
  const std::size_t J = arc_reach(M, arc);
  if (J == 0) fail(ErrorCode::EmptyArc, "arc narrower than the grid spacing; refine M");
  std::span<const cplx> s(grid.samples);
  // j = 0..J and j = M-J..M-1, which never overlap because J <= M/2 and the
  // point j = M/2 satisfies 2 sin(pi/2) = 2, never < eps.
  double total = scaled_sum(s.subspan(0, J + 1), p.value());
  total += scaled_sum(s.subspan(M - J, J), p.value());
  return total / static_cast<double>(M);
}

double arc_complement_integral(const BoundaryGrid& grid, Exponent p, const Arc& arc) {
  require(grid.radius == 1.0, "arc integrals need samples on the unit circle");
  const std::size_t M = grid.size();
  const std::size_t J = arc_reach(M, arc);
  if (J == 0) fail(ErrorCode::EmptyArc, "arc narrower than the grid spacing; refine M");
  std::span<const cplx> s(grid.samples);
  return scaled_sum(s.subspan(J + 1, M - 2 * J - 1), p.value()) / static_cast<double>(M);
}

cplx mobius(cplx a, cplx z) {
  require(std::abs(a) < 1.0, "Möbius parameter must lie in the open disk");
  return (a - z) / (1.0 - std::conj(a) * z);
}

double garsia_seminorm(const ComplexSeries& f, Exponent p, cplx a, const QuadratureSpec& q) {
  require(q.radial_nodes >= 16 && q.angular_nodes >= 64,
          "Garsia quadrature needs >= 16 radial and >= 64 angular nodes");
  require(std::abs(a) < 1.0, "Möbius parameter must lie in the open disk");
  const double pv = p.value();
  const int nr = pv < 1.0 ? 2 * q.radial_nodes : q.radial_nodes;
  const auto n = static_cast<std::size_t>(q.angular_nodes);
  const ComplexSeries df = derivative(f);
  if (df.is_zero()) return 0.0;

  const GaussRule rule = gauss_legendre(nr);
  const double one_minus_a2 = 1.0 - std::norm(a);
  const auto& k = simd::kernels();
  std::vector<double> w(n);
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = 0.5 * (rule.nodes[i] + 1.0);
    const double wr = 0.5 * rule.weights[i];
    const double one_minus_r2 = 1.0 - r * r;
    const BoundaryGrid ring = boundary_samples(df, n, r);
    // 1 - |phi_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = std::polar(r, kTwoPi * j / n);
      w[j] = one_minus_a2 * one_minus_r2 / std::norm(1.0 - std::conj(a) * z) /
             static_cast<double>(n);
    }
    const double ring_mean = k.weighted_sum_abs_pow(ring.samples.data(), w.data(), n, pv, 1.0);
    total += wr * 2.0 * r * std::pow(one_minus_r2, pv - 1.0) * ring_mean;
  }
  return total;
}

double sup_garsia(const ComplexSeries& f, Exponent p, std::span<const cplx> a_grid,
                  const QuadratureSpec& q) {
  require(!a_grid.empty(), "sup over an empty parameter grid");
  double best = 0.0;
  for (cplx a : a_grid) best = std::max(best, garsia_seminorm(f, p, a, q));
  return best;
}

}  // namespace hvl
