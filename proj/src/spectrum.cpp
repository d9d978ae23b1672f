#include "hvl/spectrum.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hvl/error.hpp"

namespace hvl {

std::vector<cplx> image_cloud(const Symbol& g, int radial_levels, int angular_nodes) {
  require(radial_levels >= 1 && angular_nodes >= 1, "image cloud needs a nonempty grid");
  std::vector<double> radii;
  for (int j = 1; j < radial_levels; ++j) radii.push_back(static_cast<double>(j) / radial_levels);
  for (int k = 1; k <= radial_levels; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  std::vector<cplx> cloud{g.series()[0]};
  const auto n = static_cast<std::size_t>(angular_nodes);
  for (double r : radii) {
    const BoundaryGrid ring = boundary_samples(g.series(), n, r);
    cloud.insert(cloud.end(), ring.samples.begin(), ring.samples.end());
  }
  return cloud;
}

double hausdorff_one_sided(std::span<const cplx> A, std::span<const cplx> B) {
  require(!A.empty() && !B.empty(), "Hausdorff distance of empty sets");
  double worst = 0.0;
  for (cplx a : A) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx b : B) {
      best = std::min(best, std::norm(a - b));
      if (best <= worst) break;  // cannot raise the max
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double hausdorff(std::span<const cplx> A, std::span<const cplx> B) {
  return std::max(hausdorff_one_sided(A, B), hausdorff_one_sided(B, A));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Boundary: return "boundary";
  }
  return "boundary";
}

Membership spectrum_membership(cplx lambda, std::span<const cplx> cloud, double tol) {
  require(!cloud.empty(), "membership against an empty cloud");
  require(tol > 0.0, "membership tolerance must be positive");
  double d2 = std::numeric_limits<double>::infinity();
  for (cplx c : cloud) d2 = std::min(d2, std::norm(lambda - c));
  const double d = std::sqrt(d2);
  if (lambda == cplx{} || d <= tol) return {Verdict::Inside, d};
  if (d >= 3.0 * tol) return {Verdict::Outside, d};
  return {Verdict::Boundary, d};
}

double resolvent_norm_probe(const Symbol& g, cplx lambda, Exponent p,
                            std::span<const ComplexSeries> probes, std::size_t M,
                            std::size_t out_degree) {
  require(!probes.empty(), "resolvent probe needs at least one probe");
  double best = 0.0;
  for (const auto& h : probes) {
    const std::size_t out =
        out_degree ? out_degree : h.degree() + std::max<std::size_t>(256, 4 * g.degree());
    const std::size_t grid = M ? M : default_grid_size(out);
    const double denom = hp_norm(h, p, grid);
    require(denom > 1e-10, "probe has (numerically) zero norm");
    best = std::max(best, hp_norm(resolvent(g, lambda, h, out), p, grid) / denom);
  }
  return best;
}

namespace {

Eigen::MatrixXcd shifted(const OperatorMatrix& A, cplx lambda) {
  Eigen::MatrixXcd B = -A.entries;
  B.diagonal().array() += lambda;
  return B;
}

}  // namespace

double sigma_min_svd(const OperatorMatrix& A, cplx lambda) {
  const Eigen::MatrixXcd B = shifted(A, lambda);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
  return svd.singularValues().minCoeff();
}

double sigma_min(const OperatorMatrix& A, cplx lambda) {
  const Eigen::MatrixXcd B = shifted(A, lambda);
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    if (B(i, i) == cplx{}) return 0.0;  // triangular with a zero pivot
  }
  const Eigen::MatrixXcd inv =
      B.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(B.rows(), B.cols()));
  if (!inv.allFinite()) return sigma_min_svd(A, lambda);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(inv);
  return 1.0 / svd.singularValues()(0);
}

std::vector<PseudoPoint> pseudospectrum_grid(const Symbol& g, std::size_t N,
                                             std::span<const cplx> lambdas, Exponent p) {
  require(p.value() == 2.0, "pseudospectra are only defined for the p = 2 matrix realization");
  require(N >= 4 * g.degree(), "pseudospectrum truncation must be at least 4 deg g");
  const OperatorMatrix A = matrix(g, N);
  std::vector<PseudoPoint> out;
  out.reserve(lambdas.size());
  for (cplx lambda : lambdas) out.push_back({lambda, sigma_min(A, lambda)});
  return out;
}

SpectrumReport spectrum_report(const Symbol& g, std::span<const cplx> lambdas,
                               const SpectrumOptions& opts) {
  SpectrumReport rep;
  rep.image_cloud = image_cloud(g, opts.radial_levels, opts.angular_nodes);
  std::vector<ComplexSeries> probes;
  for (std::size_t k = 1; k <= opts.probe_degree; ++k) probes.push_back(ComplexSeries::monomial(k));
  for (cplx lambda : lambdas) {
    const Membership m = spectrum_membership(lambda, rep.image_cloud, opts.tol);
    rep.verdicts.push_back({lambda, m.verdict, m.distance});
    SpectrumReport::ProbeRow row{lambda, std::nullopt};
    if (lambda != cplx{} && std::abs(1.0 - g.series()[0] / lambda) > kOriginSingularityTol) {
      try {
        row.norm = resolvent_norm_probe(g, lambda, opts.p, probes, opts.grid_m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonFinite) throw;  // divergent series overflowed
        row.norm = std::numeric_limits<double>::infinity();
      }
    }
    rep.probe_norms.push_back(row);
  }
  return rep;
}

}  // namespace hvl
