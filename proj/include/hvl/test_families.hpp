#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hvl/hardy.hpp"
#include "hvl/series.hpp"

namespace hvl {

/// Parameters of f_a(z) = (1 - |a|^2)^{2 - 1/p} (1 - conj(a) z)^{-2}.
struct TestFunctionParam {
  TestFunctionParam(cplx a, Exponent p);
  cplx a;
  Exponent p;
};

/// Smallest N >= 1 with (N+2)|a|^{N+1} < 1e-10 (1 - |a|).
std::size_t f_a_truncation_degree(double abs_a);

/// Coefficients (1-|a|^2)^{2-1/p} (n+1) conj(a)^n, n = 0..N.
ComplexSeries f_a_series(const TestFunctionParam& param, std::size_t N);

/// f_a_series at the auto-selected truncation degree.
ComplexSeries f_a_series(const TestFunctionParam& param);

/// Exact ||f_a||_{H^p} for integer p:
/// ((1-|a|^2)^{2p-1} sum_n C(n+p-1, n)^2 |a|^{2n})^{1/p}.
double f_a_norm_oracle(const TestFunctionParam& param);

/// 2^p g_inf^p |a|^p (1-|a|^2)^{2p-1} / gamma^{3p}: dominates |(S_g f_a)(xi)|^p
/// off the arc whenever gamma <= |1 - conj(a) r xi| there.
double lemma1_tail_bound(double g_inf, cplx a, Exponent p, double gamma);

/// min |1 - a r e^{i t}| over r in [0,1] and |e^{i t} - 1| >= eps, for a in [0, 1),
/// located by successive grid refinement to about 1e-8 in (r, t).
double gamma_for_arc(double a, double eps);

/// Closed-form boundary values of f_a, or of S_g f_a for a low-degree symbol g,
/// at a = 1 - gap on the positive axis. Angles and the gap are carried separately,
/// so W = 1 - a e^{i theta} keeps full relative precision for gaps and angles far
/// below double-precision resolution of 1 - a.
///
/// With w = 1 - a zeta and g((1-w)/a) = sum_k c_k w^k,
///   S_g f_a = C [c_0 (W^-2 - 1) + 2 c_1 (W^-1 - 1) - 2 c_2 log W
///                - 2 sum_{k>=3} c_k (W^{k-2} - 1) / (k-2)].
class KernelProfile {
 public:
  static constexpr std::size_t kMaxSymbolDegree = 16;

  /// f_a itself.
  KernelProfile(double gap, Exponent p);
  /// S_g f_a.
  KernelProfile(const ComplexSeries& g, double gap, Exponent p);

  cplx operator()(double theta) const;
  double gap() const { return gap_; }

 private:
  double gap_;
  double sqrt_c_;
  std::optional<std::vector<cplx>> shifted_;  // c_k above; empty for f_a itself
};

}  // namespace hvl
