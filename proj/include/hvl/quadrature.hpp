#pragma once

#include <cstddef>
#include <vector>

namespace hvl {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Composite Gauss–Legendre rule on [0, pi] split at the given breakpoints,
/// used for boundary integrals whose integrands concentrate at theta = 0.
///
/// Integrals against dm = dtheta / 2pi over the symmetric set {|theta| in panel}
/// are formed by evaluating at +theta and -theta with the same weight.
class PanelRule {
 public:
  PanelRule(std::vector<double> breakpoints, int nodes_per_panel);

  /// Breakpoints at the half-angles 2 asin(eps / 2) of the dyadic arcs
  /// eps = 2, 1, 1/2, ... down to an arc narrower than finest_angle.
  static PanelRule dyadic(double finest_angle, int nodes_per_panel);

  std::size_t panels() const { return breaks_.size() - 1; }
  std::size_t size() const { return nodes_.size(); }
  int nodes_per_panel() const { return per_panel_; }

  double lower(std::size_t panel) const { return breaks_[panel]; }
  double upper(std::size_t panel) const { return breaks_[panel + 1]; }
  const std::vector<double>& breakpoints() const { return breaks_; }

  /// Angle of node q (positive side) and its weight for dm on one side.
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Panel containing node q.
  std::size_t panel_of(std::size_t q) const { return q / static_cast<std::size_t>(per_panel_); }

  /// Index of the breakpoint equal to angle, or npos.
  std::size_t find_break(double angle) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int per_panel_;
};

/// Half-angle theta_eps = 2 asin(eps / 2) of the arc {|e^{i theta} - 1| < eps}.
double arc_half_angle(double eps);

}  // namespace hvl
