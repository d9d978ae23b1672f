#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hvl/hardy.hpp"
#include "hvl/quadrature.hpp"
#include "hvl/test_families.hpp"
#include "hvl/volterra.hpp"

namespace hvl {

/// Radii a_n = 1 - gaps[n] on the positive axis with values ||S_g f_{a_n}||_p.
struct WitnessSequence {
  Exponent p{2.0};
  std::vector<double> gaps;  // strictly decreasing
  std::vector<double> values;
  double h = 0.0;  // min of values

  double radius(std::size_t n) const { return 1.0 - gaps[n]; }
  std::size_t size() const { return gaps.size(); }
};

/// gaps 2^{-k}, k = k_first..k_last.
std::vector<double> dyadic_gaps(int k_first, int k_last);

/// Gaps >= this use the coefficient route (f_a truncated by the tail criterion,
/// S_g by convolution, uniform boundary grid); smaller gaps use KernelProfile.
inline constexpr double kCoefficientRouteGap = 0.999e-3;

/// ||S_g f_a||_p at a = 1 - gap.
double witness_value(const Symbol& g, Exponent p, double gap, int nodes_per_panel = 16);

/// Throws ZeroSymbol for g = 0 and DegenerateWitness when h < 1e-6.
WitnessSequence noncompactness_witness(const Symbol& g, Exponent p,
                                       std::span<const double> radii);
WitnessSequence noncompactness_witness_from_gaps(const Symbol& g, Exponent p,
                                                 std::span<const double> gaps,
                                                 int nodes_per_panel = 16);

/// Per-panel masses of |F|^p against dm, one entry per panel of a PanelRule,
/// covering both theta and -theta.
std::vector<double> panel_masses(const KernelProfile& F, Exponent p, const PanelRule& rule);

struct ConditionRecord {
  int condition = 0;  // 1, 2 or 3
  int n = 0;          // selection step, 1-based
  int k = 0;          // witness member index for condition 1 (1-based), else n
  double value = 0.0;
  double threshold = 0.0;

  /// Conditions 1 and 2 are upper bounds, condition 3 a lower bound.
  bool holds() const { return condition == 3 ? value > threshold : value < threshold; }
  double margin() const { return condition == 3 ? value - threshold : threshold - value; }
};

struct SelectionResult {
  Exponent p{2.0};
  double delta = 0.0;
  double h = 0.0;
  int nodes_per_panel = 16;
  std::vector<double> epsilons;           // eps_1 = 2, then halvings
  std::vector<std::size_t> chosen_index;  // into the witness sequence
  std::vector<double> chosen_gaps;        // 1 - b_n
  std::vector<ConditionRecord> conditions;

  std::size_t terms() const { return chosen_gaps.size(); }
  bool all_hold() const;
};

/// (1/8)(1 - 2^{-p})^{1/p}, a quarter of the feasibility ceiling for delta.
double default_delta(Exponent p);

/// (1/2)(1 - 2^{-p})^{1/p}: delta must stay below this.
double delta_ceiling(Exponent p);

/// Inductive arc/subsequence selection. Arc widths are halved from 2 until every
/// earlier member is small on the arc; the witness is then advanced until a member
/// is small off the arc and retains more than h/2 on it. Throws SelectionExhausted
/// when the witness runs out, PrecisionFloor when a threshold drops below what the
/// quadrature resolves.
SelectionResult greedy_selection(const WitnessSequence& witness, const Symbol& g, double delta,
                                 int terms, int nodes_per_panel = 16);

/// Re-evaluates every stored condition with a fresh quadrature of the given
/// resolution. The result carries the new values.
SelectionResult recheck_selection(const SelectionResult& s, const Symbol& g,
                                  int nodes_per_panel);

/// A finite system of boundary profiles F_j with the H^p norm of sum c_j F_j.
class FrameSystem {
 public:
  FrameSystem(std::vector<KernelProfile> profiles, Exponent p, int nodes_per_panel);

  std::size_t size() const { return columns_.size(); }
  double norm(std::span<const cplx> c) const;
  /// ||sum c_j F_j||_p / ||c||_{l^p}
  double ratio(std::span<const cplx> c) const;

 private:
  Exponent p_;
  std::vector<double> weights_;             // both sides, dm
  std::vector<std::vector<cplx>> columns_;  // F_j at +nodes then -nodes
};

FrameSystem selection_system(const Symbol& g, const SelectionResult& s, int nodes_per_panel = 16);
FrameSystem identity_system(const SelectionResult& s, int nodes_per_panel = 16);

/// One random coefficient vector: family 0 dense Gaussian, 1 sparse, 2 alternating sign.
std::vector<cplx> random_coefficients(std::uint64_t seed, std::size_t trial, std::size_t n);

struct FrameBounds {
  double c_low = 0.0;
  double c_high = 0.0;
  int trials = 0;
};

FrameBounds frame_bounds(const FrameSystem& system, int trials, std::uint64_t seed);

/// Ratios for sum c_j S_g f_{b_j}.
FrameBounds frame_bounds(const Symbol& g, const SelectionResult& s, int trials,
                         std::uint64_t seed, int nodes_per_panel = 16);

/// Ratios for the raw family sum c_j f_{b_j}.
FrameBounds basis_frame_bounds_identity(const SelectionResult& s, int trials, std::uint64_t seed,
                                        int nodes_per_panel = 16);

/// h (1/2 - delta (1 - 2^{-p})^{-1/p}).
double predicted_lower_frame_bound(const SelectionResult& s);

struct L2Report {
  int trials = 0;
  double max_residual = 0.0;
  bool holds = false;
};

/// Checks M_g f - f(0) g(0) = T_g f + S_g f coefficientwise on random f of degree <= 64.
L2Report l2_decomposition_check(const Symbol& g, Exponent p, int trials, std::uint64_t seed);

/// Finite form of the two limits in the arc-localization lemma, on uniform grids.
struct Lemma1Tables {
  double a = 0.0;
  std::vector<double> eps;
  std::vector<double> arc_values;  // int_{A_eps} |S_g f_a|^p dm
  double eps_fixed = 0.0;
  std::vector<double> radii;
  std::vector<double> complement_values;  // int outside A_eps_fixed |S_g f_r|^p dm
  std::vector<double> tail_bounds;
  double gamma = 0.0;
  std::size_t grid_m = 0;  // largest grid used

  bool arc_decreasing() const;
  bool complement_decreasing() const;
  bool dominated() const;
};

Lemma1Tables lemma1_tables(const Symbol& g, Exponent p, double a, std::span<const double> eps,
                           double eps_fixed, std::span<const double> radii);

/// ||S_g f_a||_p / ||f_a||_p across radii, for truncations of g at each level.
struct TrendSweep {
  std::vector<std::size_t> levels;
  std::vector<double> radii;
  std::vector<std::vector<double>> ratios;  // [level][radius]
  std::vector<std::vector<double>> raw;     // ||S_g f_a||_p
  std::string classification;               // "bounded", "unbounded trend", "inconclusive"

  double sweep_variation() const;  // max/min - 1 at the top level
  double sweep_growth() const;     // last/first at the top level
};

TrendSweep boundedness_trend(const ComplexSeries& g, Exponent p, std::span<const double> radii,
                             std::span<const std::size_t> levels);

}  // namespace hvl
