#include "hvl/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "hvl/error.hpp"
#include "hvl/simd.hpp"

namespace hvl {
namespace {

// Panel masses are sums of positive terms from the gap-coordinate closed form, so
// they keep relative precision however small they get. What the quadrature cannot
// resolve is a p-th power threshold near the bottom of the normal double range.
constexpr double kThresholdFloor = 1e-280;

double lp_norm(std::span<const cplx> c, double p) {
  double s = 0.0;
  for (cplx x : c) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

// Prefix and suffix sums of panel masses; inside(i) covers panels [0, i).
struct MassTable {
  std::vector<double> prefix;
  std::vector<double> suffix;

  explicit MassTable(const std::vector<double>& m) : prefix(m.size() + 1), suffix(m.size() + 1) {
    for (std::size_t i = 0; i < m.size(); ++i) prefix[i + 1] = prefix[i] + m[i];
    for (std::size_t i = m.size(); i-- > 0;) suffix[i] = suffix[i + 1] + m[i];
  }
  double total() const { return prefix.back(); }
};

class ArcOracle {
 public:
  ArcOracle(const Symbol& g, Exponent p, std::span<const double> gaps, int nodes_per_panel)
      : g_(g), p_(p), gaps_(gaps.begin(), gaps.end()),
        rule_(PanelRule::dyadic(1e-3 * *std::min_element(gaps.begin(), gaps.end()),
                                nodes_per_panel)),
        tables_(gaps.size()) {}

  const MassTable& table(std::size_t i) {
    if (!tables_[i]) {
      const KernelProfile F(g_.series(), gaps_[i], p_);
      tables_[i] = std::make_unique<MassTable>(panel_masses(F, p_, rule_));
    }
    return *tables_[i];
  }

  std::size_t break_index(double eps) const {
    if (eps >= 2.0) return rule_.panels();
    const std::size_t idx = rule_.find_break(arc_half_angle(eps));
    if (idx == PanelRule::npos) {
      fail(ErrorCode::PrecisionFloor, "arc width below the resolved panel range");
    }
    return idx;
  }

  double inside(std::size_t i, double eps) { return table(i).prefix[break_index(eps)]; }
  double outside(std::size_t i, double eps) { return table(i).suffix[break_index(eps)]; }
  double finest_angle() const { return rule_.breakpoints()[1]; }

 private:
  const Symbol& g_;
  Exponent p_;
  std::vector<double> gaps_;
  PanelRule rule_;
  std::vector<std::unique_ptr<MassTable>> tables_;
};

void check_resolvable(double threshold, double p) {
  if (std::pow(threshold, p) <= kThresholdFloor) {
    fail(ErrorCode::PrecisionFloor, "selection threshold below quadrature resolution");
  }
}

}  // namespace

std::vector<double> dyadic_gaps(int k_first, int k_last) {
  require(k_first >= 1 && k_last >= k_first && k_last <= 1000, "dyadic gap range out of bounds");
  std::vector<double> gaps;
  for (int k = k_first; k <= k_last; ++k) gaps.push_back(std::ldexp(1.0, -k));
  return gaps;
}

std::vector<double> panel_masses(const KernelProfile& F, Exponent p, const PanelRule& rule) {
  const auto& nodes = rule.nodes();
  const auto& w = rule.weights();
  const std::size_t per = static_cast<std::size_t>(rule.nodes_per_panel());
  std::vector<cplx> vals(2 * per);
  std::vector<double> ww(2 * per);
  std::vector<double> out(rule.panels());
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < rule.panels(); ++i) {
    for (std::size_t q = 0; q < per; ++q) {
      const std::size_t idx = i * per + q;
      vals[q] = F(nodes[idx]);
      vals[per + q] = F(-nodes[idx]);
      ww[q] = ww[per + q] = w[idx];
    }
    out[i] = k.weighted_sum_abs_pow(vals.data(), ww.data(), vals.size(), p.value(), 1.0);
  }
  return out;
}

double witness_value(const Symbol& g, Exponent p, double gap, int nodes_per_panel) {
  require(gap > 0.0 && gap < 1.0, "witness radius must lie in (0, 1)");
  if (gap >= kCoefficientRouteGap) {
    const double a = 1.0 - gap;
    const std::size_t N = f_a_truncation_degree(a);
    const ComplexSeries f = f_a_series(TestFunctionParam(a, p), N);
    const std::size_t out = N + g.degree();
    return hp_norm(apply_Sg(g, f, out), p, default_grid_size(out));
  }
  const KernelProfile F(g.series(), gap, p);
  const PanelRule rule = PanelRule::dyadic(1e-3 * gap, nodes_per_panel);
  const auto m = panel_masses(F, p, rule);
  double total = 0.0;
  for (double x : m) total += x;
  return std::pow(total, 1.0 / p.value());
}

WitnessSequence noncompactness_witness_from_gaps(const Symbol& g, Exponent p,
                                                 std::span<const double> gaps,
                                                 int nodes_per_panel) {
  require(!gaps.empty(), "witness needs at least one radius");
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    require(gaps[i] < gaps[i - 1], "witness radii must be strictly increasing");
  }
  if (g.sup_estimate() < 1e-12) fail(ErrorCode::ZeroSymbol, "symbol vanishes; S_g = 0 is compact");
  WitnessSequence w;
  w.p = p;
  w.gaps.assign(gaps.begin(), gaps.end());
  for (double gap : gaps) w.values.push_back(witness_value(g, p, gap, nodes_per_panel));
  w.h = *std::min_element(w.values.begin(), w.values.end());
  if (w.h < 1e-6) {
    fail(ErrorCode::DegenerateWitness, "witness norms fall below 1e-6; rotate the symbol");
  }
  return w;
}

WitnessSequence noncompactness_witness(const Symbol& g, Exponent p,
                                       std::span<const double> radii) {
  std::vector<double> gaps;
  for (double r : radii) {
    require(r > 0.0 && r < 1.0, "witness radius must lie in (0, 1)");
    gaps.push_back(1.0 - r);
  }
  return noncompactness_witness_from_gaps(g, p, gaps);
}

bool SelectionResult::all_hold() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionRecord& c) { return c.holds(); });
}

double delta_ceiling(Exponent p) {
  return 0.5 * std::pow(1.0 - std::pow(2.0, -p.value()), 1.0 / p.value());
}

double default_delta(Exponent p) { return 0.25 * delta_ceiling(p); }

namespace {

void record_step(SelectionResult& s, ArcOracle& arcs, std::size_t n,
                 std::span<const std::size_t> local_index) {
  const double pv = s.p.value();
  const double eps = s.epsilons[n - 1];
  const double thr = std::pow(4.0, -static_cast<double>(n)) * s.delta * s.h;
  for (std::size_t k = 1; k < n; ++k) {
    s.conditions.push_back({1, static_cast<int>(n), static_cast<int>(k),
                            std::pow(arcs.inside(local_index[k - 1], eps), 1.0 / pv), thr});
  }
  const std::size_t i = local_index[n - 1];
  s.conditions.push_back({2, static_cast<int>(n), static_cast<int>(n),
                          n == 1 ? 0.0 : std::pow(arcs.outside(i, eps), 1.0 / pv), thr});
  s.conditions.push_back({3, static_cast<int>(n), static_cast<int>(n),
                          std::pow(arcs.inside(i, eps), 1.0 / pv), 0.5 * s.h});
}

}  // namespace

SelectionResult greedy_selection(const WitnessSequence& witness, const Symbol& g, double delta,
                                 int terms, int nodes_per_panel) {
  const Exponent p = witness.p;
  const double pv = p.value();
  require(delta > 0.0 && delta < delta_ceiling(p),
          "delta must lie in (0, (1/2)(1 - 2^-p)^(1/p))");
  require(terms >= 1, "selection needs at least one term");
  require(witness.size() >= 4 * static_cast<std::size_t>(terms),
          "witness needs at least 4 candidates per term");
  require(g.degree() <= KernelProfile::kMaxSymbolDegree,
          "selection supports symbols of degree <= 16");

  SelectionResult s;
  s.p = p;
  s.delta = delta;
  s.h = witness.h;
  s.nodes_per_panel = nodes_per_panel;
  ArcOracle arcs(g, p, witness.gaps, nodes_per_panel);

  auto norm_on = [&](std::size_t i, double eps) { return std::pow(arcs.inside(i, eps), 1.0 / pv); };
  auto norm_off = [&](std::size_t i, double eps) { return std::pow(arcs.outside(i, eps), 1.0 / pv); };

  // n = 1: the whole circle; the complement is empty.
  s.epsilons.push_back(2.0);
  std::size_t i = 0;
  while (i < witness.size() && !(norm_on(i, 2.0) > 0.5 * s.h)) ++i;
  if (i == witness.size()) fail(ErrorCode::SelectionExhausted, "no witness member exceeds h/2");
  s.chosen_index.push_back(i);

  for (int n = 2; n <= terms; ++n) {
    const double thr = std::pow(4.0, -n) * delta * s.h;
    check_resolvable(thr, pv);
    double eps = s.epsilons.back();
    while (true) {
      eps *= 0.5;
      if (arc_half_angle(eps) < arcs.finest_angle()) {
        fail(ErrorCode::PrecisionFloor, "arc width fell below the resolved panel range");
      }
      bool small = true;
      for (std::size_t k : s.chosen_index) {
        if (!(norm_on(k, eps) < thr)) {
          small = false;
          break;
        }
      }
      if (small) break;
    }
    s.epsilons.push_back(eps);

    i = s.chosen_index.back() + 1;
    for (; i < witness.size(); ++i) {
      if (norm_off(i, eps) < thr && norm_on(i, eps) > 0.5 * s.h) break;
    }
    if (i == witness.size()) {
      fail(ErrorCode::SelectionExhausted,
           "witness exhausted at term " + std::to_string(n) + "; supply radii closer to 1");
    }
    s.chosen_index.push_back(i);
  }

  for (std::size_t k : s.chosen_index) s.chosen_gaps.push_back(witness.gaps[k]);
  for (std::size_t n = 1; n <= s.chosen_index.size(); ++n) record_step(s, arcs, n, s.chosen_index);
  return s;
}

SelectionResult recheck_selection(const SelectionResult& s, const Symbol& g,
                                  int nodes_per_panel) {
  SelectionResult out = s;
  out.nodes_per_panel = nodes_per_panel;
  out.conditions.clear();
  ArcOracle arcs(g, s.p, s.chosen_gaps, nodes_per_panel);
  std::vector<std::size_t> local(s.chosen_gaps.size());
  for (std::size_t k = 0; k < local.size(); ++k) local[k] = k;
  for (std::size_t n = 1; n <= local.size(); ++n) record_step(out, arcs, n, local);
  return out;
}

FrameSystem::FrameSystem(std::vector<KernelProfile> profiles, Exponent p, int nodes_per_panel)
    : p_(p) {
  require(!profiles.empty(), "frame system needs at least one member");
  double min_gap = 1.0;
  for (const auto& F : profiles) min_gap = std::min(min_gap, F.gap());
  const PanelRule rule = PanelRule::dyadic(1e-3 * min_gap, nodes_per_panel);
  const std::size_t Q = rule.size();
  weights_.resize(2 * Q);
  for (std::size_t q = 0; q < Q; ++q) weights_[q] = weights_[Q + q] = rule.weights()[q];
  for (const auto& F : profiles) {
    std::vector<cplx> col(2 * Q);
    for (std::size_t q = 0; q < Q; ++q) {
      col[q] = F(rule.nodes()[q]);
      col[Q + q] = F(-rule.nodes()[q]);
    }
    columns_.push_back(std::move(col));
  }
}

double FrameSystem::norm(std::span<const cplx> c) const {
  require(c.size() == columns_.size(), "coefficient vector length mismatch");
  const auto& k = simd::kernels();
  std::vector<cplx> sum(weights_.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] != cplx{}) k.caxpy(c[j], columns_[j].data(), sum.data(), sum.size());
  }
  const double m = std::sqrt(k.max_abs2(sum.data(), sum.size()));
  if (m == 0.0) return 0.0;
  const double pv = p_.value();
  const double s = k.weighted_sum_abs_pow(sum.data(), weights_.data(), sum.size(), pv, 1.0 / m);
  return m * std::pow(s, 1.0 / pv);
}

double FrameSystem::ratio(std::span<const cplx> c) const {
  const double d = lp_norm(c, p_.value());
  require(d > 0.0, "frame ratio of the zero vector");
  return norm(c) / d;
}

FrameSystem selection_system(const Symbol& g, const SelectionResult& s, int nodes_per_panel) {
  std::vector<KernelProfile> F;
  for (double gap : s.chosen_gaps) F.emplace_back(g.series(), gap, s.p);
  return FrameSystem(std::move(F), s.p, nodes_per_panel);
}

FrameSystem identity_system(const SelectionResult& s, int nodes_per_panel) {
  std::vector<KernelProfile> F;
  for (double gap : s.chosen_gaps) F.emplace_back(gap, s.p);
  return FrameSystem(std::move(F), s.p, nodes_per_panel);
}

std::vector<cplx> random_coefficients(std::uint64_t seed, std::size_t trial, std::size_t n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  std::vector<cplx> c(n);
  switch (trial % 3) {
    case 0:
      for (auto& x : c) x = cplx(normal(rng), normal(rng));
      break;
    case 1: {
      for (auto& x : c) {
        if (unif(rng) < 0.3) x = cplx(normal(rng), normal(rng));
      }
      const auto pick = static_cast<std::size_t>(unif(rng) * n) % n;
      if (c[pick] == cplx{}) c[pick] = cplx(1.0 + unif(rng), 0.0);
      break;
    }
    default: {
      const cplx phase = std::polar(1.0, 2.0 * 3.141592653589793 * unif(rng));
      for (std::size_t j = 0; j < n; ++j) c[j] = (j % 2 ? -1.0 : 1.0) * (0.5 + unif(rng)) * phase;
      break;
    }
  }
  return c;
}

FrameBounds frame_bounds(const FrameSystem& system, int trials, std::uint64_t seed) {
  require(trials >= 1, "frame bounds need at least one trial");
  FrameBounds b{std::numeric_limits<double>::infinity(), 0.0, trials};
  for (int t = 0; t < trials; ++t) {
    const auto c = random_coefficients(seed, static_cast<std::size_t>(t), system.size());
    const double r = system.ratio(c);
    b.c_low = std::min(b.c_low, r);
    b.c_high = std::max(b.c_high, r);
  }
  return b;
}

FrameBounds frame_bounds(const Symbol& g, const SelectionResult& s, int trials,
                         std::uint64_t seed, int nodes_per_panel) {
  require(trials >= 50, "frame bounds need at least 50 trials");
  return frame_bounds(selection_system(g, s, nodes_per_panel), trials, seed);
}

FrameBounds basis_frame_bounds_identity(const SelectionResult& s, int trials, std::uint64_t seed,
                                        int nodes_per_panel) {
  require(trials >= 1, "frame bounds need at least one trial");
  return frame_bounds(identity_system(s, nodes_per_panel), trials, seed);
}

double predicted_lower_frame_bound(const SelectionResult& s) {
  const double pv = s.p.value();
  return s.h * (0.5 - s.delta * std::pow(1.0 - std::pow(2.0, -pv), -1.0 / pv));
}

L2Report l2_decomposition_check(const Symbol& g, Exponent /*p*/, int trials, std::uint64_t seed) {
  require(g.degree() >= 1 && !(g.series() - ComplexSeries::constant(g.series()[0])).is_zero(),
          "l2 decomposition check needs a nonconstant symbol");
  require(trials >= 1, "l2 decomposition check needs at least one trial");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> deg(0, 64);
  L2Report rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = cplx(normal(rng), normal(rng));
    const ComplexSeries f(std::move(c));
    const std::size_t out = f.degree() + g.degree();
    const ComplexSeries lhs =
        apply_Mg(g, f, out) - ComplexSeries::constant(f[0] * g.series()[0]);
    const ComplexSeries rhs = apply_Tg(g, f, out) + apply_Sg(g, f, out);
    rep.max_residual = std::max(rep.max_residual, max_coeff_diff(lhs, rhs, out));
  }
  rep.holds = rep.max_residual <= 1e-12;
  return rep;
}

bool Lemma1Tables::arc_decreasing() const {
  for (std::size_t i = 1; i < arc_values.size(); ++i) {
    if (!(arc_values[i] < arc_values[i - 1])) return false;
  }
  return true;
}

bool Lemma1Tables::complement_decreasing() const {
  for (std::size_t i = 1; i < complement_values.size(); ++i) {
    if (!(complement_values[i] < complement_values[i - 1])) return false;
  }
  return true;
}

bool Lemma1Tables::dominated() const {
  for (std::size_t i = 0; i < complement_values.size(); ++i) {
    if (!(complement_values[i] <= tail_bounds[i])) return false;
  }
  return true;
}

namespace {

BoundaryGrid sg_fa_grid(const Symbol& g, Exponent p, double a) {
  const std::size_t N = f_a_truncation_degree(a);
  const ComplexSeries f = f_a_series(TestFunctionParam(a, p), N);
  const std::size_t out = N + g.degree();
  return boundary_samples(apply_Sg(g, f, out), default_grid_size(out));
}

}  // namespace

Lemma1Tables lemma1_tables(const Symbol& g, Exponent p, double a, std::span<const double> eps,
                           double eps_fixed, std::span<const double> radii) {
  require(a >= 0.0 && a < 1.0, "lemma tables expect a rotated onto [0, 1)");
  require(!radii.empty(), "lemma tables need radii");
  Lemma1Tables t;
  t.a = a;
  t.eps.assign(eps.begin(), eps.end());
  t.eps_fixed = eps_fixed;
  t.radii.assign(radii.begin(), radii.end());

  const BoundaryGrid grid = sg_fa_grid(g, p, a);
  t.grid_m = grid.size();
  for (double e : eps) t.arc_values.push_back(arc_integral(grid, p, Arc(e)));

  // One gamma for the whole sequence: gamma_for_arc is nonincreasing in a.
  t.gamma = gamma_for_arc(*std::max_element(radii.begin(), radii.end()), eps_fixed);
  for (double r : radii) {
    const BoundaryGrid gr = sg_fa_grid(g, p, r);
    t.grid_m = std::max(t.grid_m, gr.size());
    t.complement_values.push_back(arc_complement_integral(gr, p, Arc(eps_fixed)));
    t.tail_bounds.push_back(lemma1_tail_bound(g.sup_estimate(), r, p, t.gamma));
  }
  return t;
}

double TrendSweep::sweep_variation() const {
  const auto& top = ratios.back();
  return *std::max_element(top.begin(), top.end()) / *std::min_element(top.begin(), top.end()) -
         1.0;
}

double TrendSweep::sweep_growth() const { return ratios.back().back() / ratios.back().front(); }

TrendSweep boundedness_trend(const ComplexSeries& g, Exponent p, std::span<const double> radii,
                             std::span<const std::size_t> levels) {
  require(!radii.empty() && !levels.empty(), "trend sweep needs radii and truncation levels");
  TrendSweep t;
  t.levels.assign(levels.begin(), levels.end());
  t.radii.assign(radii.begin(), radii.end());
  for (std::size_t L : levels) {
    const Symbol gL(g.truncated(std::min(L, g.degree())));
    std::vector<double> ratio_row, raw_row;
    for (double a : radii) {
      require(a >= 0.0 && a < 1.0, "sweep radius must lie in [0, 1)");
      const std::size_t N = f_a_truncation_degree(a);
      const ComplexSeries f = f_a_series(TestFunctionParam(a, p), N);
      const std::size_t out = N + gL.degree();
      const std::size_t M = default_grid_size(out);
      const double raw = hp_norm(apply_Sg(gL, f, out), p, M);
      raw_row.push_back(raw);
      ratio_row.push_back(raw / hp_norm(f, p, M));
    }
    t.ratios.push_back(std::move(ratio_row));
    t.raw.push_back(std::move(raw_row));
  }

  bool stable = true, growing = true;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (std::abs(t.ratios.back()[j] / t.ratios.front()[j] - 1.0) >= 0.1) stable = false;
  }
  for (std::size_t l = 1; l < levels.size(); ++l) {
    if (!(t.ratios[l].back() >= 1.1 * t.ratios[l - 1].back())) growing = false;
  }
  if (levels.size() < 2) growing = false;
  if (t.sweep_variation() < 0.1 && stable) {
    t.classification = "bounded";
  } else if (t.sweep_growth() >= 3.0 && growing) {
    t.classification = "unbounded trend";
  } else {
    t.classification = "inconclusive";
  }
  return t;
}

}  // namespace hvl
