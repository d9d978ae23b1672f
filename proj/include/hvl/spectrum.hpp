#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hvl/hardy.hpp"
#include "hvl/volterra.hpp"

namespace hvl {

/// g on the rings r = j/L (j = 0..L-1) and r = 1 - 2^{-k} (k = 1..L), each with
/// angular_nodes points (one point at r = 0).
std::vector<cplx> image_cloud(const Symbol& g, int radial_levels, int angular_nodes);

/// max over a in A of min over b in B of |a - b|.
double hausdorff_one_sided(std::span<const cplx> A, std::span<const cplx> B);
double hausdorff(std::span<const cplx> A, std::span<const cplx> B);

enum class Verdict { Inside, Outside, Boundary };
std::string_view to_string(Verdict v);

struct Membership {
  Verdict verdict;
  double distance;  // distance from lambda to the cloud
};

/// 0 is always inside; otherwise inside at distance <= tol, outside at >= 3 tol.
Membership spectrum_membership(cplx lambda, std::span<const cplx> cloud, double tol);

/// max over probes of ||R_{lambda,g} probe||_p / ||probe||_p. out_degree = 0 uses
/// probe degree + max(256, 4 deg g); M = 0 uses the default grid for the output.
double resolvent_norm_probe(const Symbol& g, cplx lambda, Exponent p,
                            std::span<const ComplexSeries> probes, std::size_t M = 0,
                            std::size_t out_degree = 0);

struct PseudoPoint {
  cplx lambda;
  double sigma_min;
};

/// Smallest singular value of lambda I - matrix(g, N). lambda I - A is lower
/// triangular; with a nonzero diagonal sigma_min = 1 / sigma_max(inverse), which
/// keeps relative accuracy when sigma_min is far below machine epsilon.
std::vector<PseudoPoint> pseudospectrum_grid(const Symbol& g, std::size_t N,
                                             std::span<const cplx> lambdas, Exponent p);

double sigma_min(const OperatorMatrix& A, cplx lambda);

/// Direct SVD of lambda I - A (absolute accuracy ~ eps * ||A||).
double sigma_min_svd(const OperatorMatrix& A, cplx lambda);

struct SpectrumReport {
  struct VerdictRow {
    cplx lambda;
    Verdict verdict;
    double distance;
  };
  struct ProbeRow {
    cplx lambda;
    std::optional<double> norm;  // empty when the resolvent is formally singular
  };
  std::vector<cplx> image_cloud;
  std::vector<VerdictRow> verdicts;
  std::vector<ProbeRow> probe_norms;
};

struct SpectrumOptions {
  int radial_levels = 32;
  int angular_nodes = 256;
  double tol = 0.02;
  Exponent p{2.0};
  std::size_t probe_degree = 32;  // monomial probes z^1..z^probe_degree
  std::size_t grid_m = 0;
};

SpectrumReport spectrum_report(const Symbol& g, std::span<const cplx> lambdas,
                               const SpectrumOptions& opts);

}  // namespace hvl
