// One PASS/FAIL line per acceptance criterion. Thresholds are fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hvl/cli.hpp"
#include "hvl/hardy.hpp"
#include "hvl/simd.hpp"
#include "hvl/singularity.hpp"
#include "hvl/spectrum.hpp"
#include "hvl/test_families.hpp"
#include "hvl/volterra.hpp"

using namespace hvl;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ComplexSeries random_series(std::mt19937_64& rng, std::size_t max_degree) {
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::vector<cplx> c(deg(rng) + 1);
  for (auto& x : c) x = cplx(normal(rng), normal(rng));
  return ComplexSeries(std::move(c));
}

Check criterion_1() {
  Check c;
  double worst = 0.0;
  for (double p : {1.0, 2.0, 3.0}) {
    for (double a : {0.0, 0.3, 0.6, 0.9, 0.95}) {
      const TestFunctionParam param(a, Exponent(p));
      const ComplexSeries f = f_a_series(param);
      const double num = hp_norm(f, Exponent(p), default_grid_size(f.degree()));
      const double err = std::abs(num - f_a_norm_oracle(param));
      worst = std::max(worst, err);
      c.expect(err <= 1e-6, "p=" + fmt(p) + " a=" + fmt(a) + " err " + fmt(err));
      if (p == 1.0) c.expect(std::abs(num - 1.0) <= 1e-6, "H1 norm " + fmt(num));
    }
  }
  c.detail = "max |err| = " + fmt(worst) + (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_2() {
  Check c;
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const ComplexSeries f = random_series(rng, 64);
    const Symbol g(random_series(rng, 64));
    const std::size_t out = f.degree() + g.degree();
    const ComplexSeries lhs = apply_Mg(g, f, out) - ComplexSeries::constant(f[0] * g.series()[0]);
    const ComplexSeries rhs = apply_Tg(g, f, out) + apply_Sg(g, f, out);
    worst = std::max(worst, max_coeff_diff(lhs, rhs, out));
  }
  c.expect(worst <= 1e-12, "residual above 1e-12");
  c.detail = "max residual = " + fmt(worst) + (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_3() {
  Check c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Symbol g(random_series(rng, 32));
    const ComplexSeries h = random_series(rng, 32);
    const double r = 2.0 * g.sup_estimate() + 1.0 + unif(rng);
    const cplx lambda = std::polar(r, 2.0 * 3.141592653589793 * unif(rng));
    const std::size_t out = h.degree() + 2 * g.degree() + 32;
    const std::size_t window = out - g.degree();
    const ComplexSeries f = resolvent(g, lambda, h, out);
    const ComplexSeries back = shifted_identity(g, lambda, f, out);
    const ComplexSeries f2 = resolvent(g, lambda, shifted_identity(g, lambda, h, out), out);
    worst = std::max(worst, max_coeff_diff(back, h, window));
    worst = std::max(worst, max_coeff_diff(f2, h, window));
  }
  c.expect(worst <= 1e-10, "residual above 1e-10");
  c.detail = "max residual = " + fmt(worst) + (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_4() {
  Check c;
  const Symbol g(ComplexSeries{0.0, 1.0});
  const auto cloud = image_cloud(g, 32, 256);
  const auto in = spectrum_membership(0.5, cloud, 0.02);
  const auto outside = spectrum_membership(1.5, cloud, 0.02);
  c.expect(in.verdict == Verdict::Inside, "0.5 not inside");
  c.expect(outside.verdict == Verdict::Outside, "1.5 not outside");
  const auto A64 = matrix(g, 64), A128 = matrix(g, 128);
  const double s64 = sigma_min(A64, 0.5), s128 = sigma_min(A128, 0.5);
  const double o64 = sigma_min(A64, 1.5), o128 = sigma_min(A128, 1.5);
  c.expect(s128 < 1e-2, "sigma_min(0.5) not < 1e-2");
  c.expect(s128 <= 0.5 * s64, "sigma_min(0.5) did not halve");
  c.expect(o128 >= 0.1, "sigma_min(1.5) below 0.1");
  c.expect(std::abs(o128 / o64 - 1.0) <= 0.05, "sigma_min(1.5) unstable");
  c.detail = "sigma_min(0.5): " + fmt(s64) + " -> " + fmt(s128) + ", sigma_min(1.5): " +
             fmt(o64) + " -> " + fmt(o128) + (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_5() {
  Check c;
  const std::vector<double> radii{0.9, 0.99, 0.999};
  const Exponent p(2.0);
  const ComplexSeries bounded{0.5, 0.5};
  const std::vector<std::size_t> one{1, 2, 4};
  const TrendSweep b = boundedness_trend(bounded, p, radii, one);
  c.expect(b.sweep_variation() < 0.10, "bounded variation " + fmt(b.sweep_variation()));

  std::vector<cplx> geo(257, 1.0);
  const ComplexSeries unbounded{std::vector<cplx>(geo)};
  const std::vector<std::size_t> levels{64, 128, 256};
  const TrendSweep u = boundedness_trend(unbounded, p, radii, levels);
  c.expect(u.sweep_growth() >= 3.0, "unbounded growth " + fmt(u.sweep_growth()));
  bool keeps = true;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    keeps = keeps && u.ratios[l].back() > u.ratios[l - 1].back();
  }
  c.expect(keeps, "no growth under truncation doubling");
  c.expect(b.classification == "bounded", "bounded symbol classified " + b.classification);
  c.expect(u.classification == "unbounded trend",
           "unbounded symbol classified " + u.classification);
  c.detail = "bounded variation " + fmt(b.sweep_variation()) + ", unbounded growth " +
             fmt(u.sweep_growth()) + " (top-radius ratio " + fmt(u.ratios[0].back()) + " -> " +
             fmt(u.ratios[1].back()) + " -> " + fmt(u.ratios[2].back()) + ")" +
             (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_6() {
  Check c;
  const Symbol g(ComplexSeries{1.0});
  const std::vector<double> radii{0.9, 0.99, 0.999};
  const WitnessSequence w = noncompactness_witness(g, Exponent(2.0), radii);
  double worst = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const double a = radii[n];
    const double oracle = std::sqrt((1 + a * a) - std::pow(1 - a * a, 3));
    worst = std::max(worst, std::abs(w.values[n] - oracle));
  }
  c.expect(w.h >= 0.9, "h below 0.9");
  c.expect(worst <= 1e-3, "witness off its oracle");
  c.detail = "h = " + fmt(w.h) + ", max |value - oracle| = " + fmt(worst) +
             (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_7() {
  Check c;
  const Symbol g(ComplexSeries{1.0});
  const std::vector<double> eps{2.0, 1.0, 0.5, 0.25, 0.125};
  const std::vector<double> radii{0.9, 0.99, 0.999};
  const Lemma1Tables t = lemma1_tables(g, Exponent(2.0), 0.99, eps, 0.5, radii);
  c.expect(t.arc_decreasing(), "arc integrals not decreasing");
  c.expect(t.complement_decreasing(), "complement integrals not decreasing");
  c.expect(t.dominated(), "complement above tail bound");
  std::string arcs, tails;
  for (double v : t.arc_values) arcs += (arcs.empty() ? "" : " ") + fmt(v);
  for (std::size_t i = 0; i < t.radii.size(); ++i) {
    tails += (tails.empty() ? "" : " ") + fmt(t.complement_values[i]) + "<=" +
             fmt(t.tail_bounds[i]);
  }
  c.detail = "arcs [" + arcs + "], complements [" + tails + "], gamma " + fmt(t.gamma) +
             (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

Check criterion_8() {
  Check c;
  struct Case {
    const char* name;
    ComplexSeries g;
    double p;
  };
  const std::vector<Case> cases{{"g=1,p=2", ComplexSeries{1.0}, 2.0},
                                {"g=1,p=1", ComplexSeries{1.0}, 1.0},
                                {"g=(1+z)/2,p=2", ComplexSeries{0.5, 0.5}, 2.0}};
  const auto gaps = dyadic_gaps(1, 400);
  for (const auto& cs : cases) {
    const Symbol g(cs.g);
    const Exponent p(cs.p);
    const double delta = 0.125 * std::pow(1.0 - std::pow(2.0, -cs.p), 1.0 / cs.p);
    try {
      const WitnessSequence w = noncompactness_witness_from_gaps(g, p, gaps, 16);
      const SelectionResult s = greedy_selection(w, g, delta, 6, 16);
      const SelectionResult fine = recheck_selection(s, g, 32);
      double qerr = 0.0, min_margin = 1e300;
      for (std::size_t i = 0; i < s.conditions.size(); ++i) {
        qerr = std::max(qerr, std::abs(s.conditions[i].value - fine.conditions[i].value));
      }
      bool margins = true;
      for (const auto& r : fine.conditions) {
        min_margin = std::min(min_margin, r.margin());
        margins = margins && r.margin() > qerr;
      }
      const FrameBounds fb = frame_bounds(g, s, 100, 8, 16);
      const double floor = predicted_lower_frame_bound(s) - 1e-2;
      c.expect(s.terms() == 6, std::string(cs.name) + " terms");
      c.expect(s.all_hold() && fine.all_hold(), std::string(cs.name) + " condition violated");
      c.expect(margins, std::string(cs.name) + " margin below quadrature error");
      c.expect(fb.c_low >= floor, std::string(cs.name) + " c_low below prediction");
      c.expect(fb.c_high / fb.c_low <= 50.0, std::string(cs.name) + " c_high/c_low above 50");
      c.detail += std::string(c.detail.empty() ? "" : "; ") + cs.name + ": " +
                  std::to_string(s.conditions.size()) + " conditions, min margin " +
                  fmt(min_margin) + " vs qerr " + fmt(qerr) + ", c_low " + fmt(fb.c_low) +
                  " >= " + fmt(floor) + ", c_high/c_low " + fmt(fb.c_high / fb.c_low);
    } catch (const std::exception& e) {
      c.expect(false, std::string(cs.name) + " threw: " + e.what());
    }
  }
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Check criterion_9(bool quick) {
  Check c;
  const auto root = std::filesystem::temp_directory_path() / "hvl_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::vector<std::vector<std::string>> suites = {
      {"apply", "--g", "[[1,0]]", "--f", "[[0,0],[0,0],[1,0]]"},
      {"norm", "--f", "[[1,0],[0.5,0.25]]", "--p", "1.5"},
      {"spectrum", "--g", "[[0,0],[1,0]]", "--lambdas", "[0.5, 1.5]"},
      {"pseudospectrum", "--g", "[[0,0],[1,0]]", "--lambdas", "[0.5, 1.5]", "--degree", "64"},
      {"lemma1", "--g", "[[1,0]]"},
      {"verify-compactness", "--g", "[[1,0]]"},
  };
  if (!quick) suites.push_back({"basis-experiment", "--g", "[[1,0]]", "--seed", "5", "--terms", "4"});
  std::ostringstream sink;
  int idx = 0;
  for (const auto& s : suites) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = root / (std::to_string(idx) + "_" + std::to_string(rep));
      std::vector<std::string> args{"hvl"};
      args.insert(args.end(), s.begin(), s.end());
      args.push_back("--out");
      args.push_back(dir.string());
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), sink, sink);
      c.expect(code == 0, s[0] + " exit " + std::to_string(code));
      const std::string body = slurp(dir / "report.json");
      if (rep == 0) {
        first = body;
      } else {
        c.expect(!body.empty() && body == first, s[0] + " report.json differs");
      }
    }
    ++idx;
  }
  std::filesystem::remove_all(root);
  c.detail = std::to_string(suites.size()) + " suites compared" +
             (c.detail.empty() ? "" : "; " + c.detail);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  struct Entry {
    int id;
    const char* name;
    double budget_s;
    std::function<Check()> run;
  };
  const std::vector<Entry> entries{
      {1, "exact-norm oracle agreement", 5, criterion_1},
      {2, "operator decomposition identity", 5, criterion_2},
      {3, "resolvent inverse, both orders", 10, criterion_3},
      {4, "spectrum of S_z: membership and sigma_min", 60, criterion_4},
      {5, "bounded/unbounded trend", 60, criterion_5},
      {6, "non-compactness witness for g = 1", 10, criterion_6},
      {7, "arc localization decay", 30, criterion_7},
      {8, "greedy selection and frame bounds", 300, criterion_8},
      {9, "determinism of report.json", 120, [quick] { return criterion_9(quick); }},
  };
  std::printf("kernels: %.*s\n", static_cast<int>(simd::kernels().name.size()),
              simd::kernels().name.data());
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = std::string("threw: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > e.budget_s) {
      c.ok = false;
      c.detail += "; runtime over budget " + fmt(e.budget_s) + " s";
    }
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", c.ok ? "PASS" : "FAIL", e.id, e.name,
                secs, c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed,
              entries.size());
  return failed == 0 ? 0 : 1;
}
