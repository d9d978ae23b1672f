#include "hvl/volterra.hpp"

#include <algorithm>
#include <cmath>

#include "hvl/error.hpp"

namespace hvl {

Symbol::Symbol(ComplexSeries g, std::size_t M) : g_(std::move(g)) {
  if (M == 0) M = std::max<std::size_t>(default_grid_size(g_.degree()), 4096);
  sup_ = hinf_norm(g_, M);
}

Symbol Symbol::refined(std::size_t M) const {
  return Symbol(g_, std::max(sup_, hinf_norm(g_, M)));
}

ComplexSeries apply_Sg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree) {
  if (out_degree == 0) return ComplexSeries();
  return antiderivative(product(derivative(f), g.series(), out_degree - 1));
}

ComplexSeries apply_Tg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree) {
  if (out_degree == 0) return ComplexSeries();
  return antiderivative(product(f, derivative(g.series()), out_degree - 1));
}

ComplexSeries apply_Mg(const Symbol& g, const ComplexSeries& f, std::size_t out_degree) {
  return product(g.series(), f, out_degree);
}

ComplexSeries apply_Sg_adjoint(const Symbol& g, const ComplexSeries& y, std::size_t N) {
  // (A^H y)_n = sum_m conj(n g_m / (n+m)) y_{n+m}
  const auto gc = g.series().coeffs();
  std::vector<cplx> out(N + 1);
  for (std::size_t n = 1; n <= N; ++n) {
    cplx acc;
    const std::size_t mmax = std::min(gc.size() - 1, N - n);
    for (std::size_t m = 0; m <= mmax; ++m) {
      acc += std::conj(gc[m]) * y[n + m] * (static_cast<double>(n) / static_cast<double>(n + m));
    }
    out[n] = acc;
  }
  return ComplexSeries(std::move(out));
}

ComplexSeries resolvent(const Symbol& g, cplx lambda, const ComplexSeries& h,
                        std::size_t out_degree) {
  if (lambda == cplx{}) fail(ErrorCode::ZeroLambda, "resolvent at lambda = 0");
  const ComplexSeries denom = ComplexSeries::constant(1.0) - (1.0 / lambda) * g.series();
  if (std::abs(denom[0]) <= kOriginSingularityTol) {
    fail(ErrorCode::SingularAtOrigin, "1 - g(0)/lambda vanishes");
  }
  if (out_degree == 0) return ComplexSeries::constant(h[0]);
  const ComplexSeries inv = reciprocal(denom, out_degree - 1);
  return antiderivative(product(derivative(h), inv, out_degree - 1)) +
         ComplexSeries::constant(h[0]);
}

ComplexSeries shifted_identity(const Symbol& g, cplx lambda, const ComplexSeries& f,
                               std::size_t out_degree) {
  if (lambda == cplx{}) fail(ErrorCode::ZeroLambda, "shift by 1/lambda at lambda = 0");
  return f.truncated(out_degree) - (1.0 / lambda) * apply_Sg(g, f, out_degree);
}

OperatorMatrix matrix(const Symbol& g, std::size_t N) {
  require(N >= g.degree(), "matrix truncation must be at least the symbol degree");
  OperatorMatrix A;
  A.N = N;
  A.entries = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  const auto gc = g.series().coeffs();
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t m = 0; m < gc.size() && n + m <= N; ++m) {
      A.entries(n + m, n) = gc[m] * (static_cast<double>(n) / static_cast<double>(n + m));
    }
  }
  return A;
}

double norm_lower_bound(const Symbol& g, Exponent p, std::span<const ComplexSeries> probes,
                        std::size_t M) {
  require(!probes.empty(), "norm bound needs at least one probe");
  double best = 0.0;
  for (const auto& f : probes) {
    const std::size_t out = f.degree() + g.degree();
    const std::size_t grid = M ? M : default_grid_size(out);
    const double denom = hp_norm(f, p, grid);
    require(denom > 1e-10, "probe has (numerically) zero norm");
    best = std::max(best, hp_norm(apply_Sg(g, f, out), p, grid) / denom);
  }
  return best;
}

PowerIterationResult norm_estimate_h2(const Symbol& g, std::size_t N, int iterations,
                                      double tol) {
  require(N >= g.degree(), "power iteration truncation must be at least the symbol degree");
  require(iterations >= 1, "power iteration needs at least one step");
  // Start with equal weight on every non-constant coefficient (column 0 is null).
  std::vector<cplx> v0(N + 1, cplx(1.0, 0.0));
  v0[0] = 0.0;
  ComplexSeries v(std::move(v0));
  auto normalize = [](const ComplexSeries& x) {
    double s = 0.0;
    for (cplx c : x.coeffs()) s += std::norm(c);
    return std::sqrt(s);
  };
  const double n0 = normalize(v);
  if (n0 == 0.0) return {0.0, 0};
  v = (1.0 / n0) * v;

  double sigma = 0.0;
  for (int it = 1; it <= iterations; ++it) {
    const ComplexSeries w = apply_Sg_adjoint(g, apply_Sg(g, v, N), N);
    const double nw = normalize(w);
    if (nw == 0.0) return {0.0, it};
    const double next = std::sqrt(nw);  // ||A^H A v|| -> sigma_max^2 for unit v
    v = (1.0 / nw) * w;
    if (it > 1 && std::abs(next - sigma) <= tol * next) return {next, it};
    sigma = next;
  }
  throw IterationCapReached(sigma, iterations);
}

}  // namespace hvl
