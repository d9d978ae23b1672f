#include "hvl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hvl/error.hpp"

namespace hvl {

GaussRule gauss_legendre(int n) {
  require(n >= 1, "Gauss–Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double arc_half_angle(double eps) {
  require(eps > 0.0 && eps <= 2.0, "arc width must lie in (0, 2]");
  return 2.0 * std::asin(0.5 * eps);
}

PanelRule::PanelRule(std::vector<double> breakpoints, int nodes_per_panel)
    : breaks_(std::move(breakpoints)), per_panel_(nodes_per_panel) {
  require(nodes_per_panel >= 1, "panel rule needs nodes");
  breaks_.push_back(0.0);
  breaks_.push_back(std::numbers::pi);
  std::sort(breaks_.begin(), breaks_.end());
  breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
  require(breaks_.front() >= 0.0 && breaks_.back() <= std::numbers::pi,
          "panel breakpoints must lie in [0, pi]");

  const GaussRule g = gauss_legendre(nodes_per_panel);
  nodes_.reserve(panels() * nodes_per_panel);
  weights_.reserve(panels() * nodes_per_panel);
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    const double a = breaks_[i], b = breaks_[i + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < nodes_per_panel; ++q) {
      nodes_.push_back(mid + half * g.nodes[q]);
      weights_.push_back(half * g.weights[q] / (2.0 * std::numbers::pi));
    }
  }
}

PanelRule PanelRule::dyadic(double finest_angle, int nodes_per_panel) {
  require(finest_angle > 0.0, "finest panel angle must be positive");
  std::vector<double> br;
  double eps = 1.0;
  while (true) {
    const double t = arc_half_angle(eps);
    br.push_back(t);
    if (t < finest_angle || eps < 1e-300) break;
    eps *= 0.5;
  }
  return PanelRule(std::move(br), nodes_per_panel);
}

std::size_t PanelRule::find_break(double angle) const {
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), angle);
  if (it != breaks_.end() && *it == angle) return static_cast<std::size_t>(it - breaks_.begin());
  return npos;
}

}  // namespace hvl
