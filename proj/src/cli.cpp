#include "hvl/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hvl/error.hpp"
#include "hvl/hardy.hpp"
#include "hvl/io.hpp"
#include "hvl/singularity.hpp"
#include "hvl/spectrum.hpp"
#include "hvl/test_families.hpp"
#include "hvl/volterra.hpp"

namespace hvl::cli {
namespace {

using io::json;

const std::vector<std::string> kCommands = {
    "norm",  "apply",          "spectrum",           "pseudospectrum", "verify-boundedness",
    "verify-compactness", "lemma1", "basis-experiment"};

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, what + ": " + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::ParseError, "cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Inline JSON, or @path to a JSON file.
json json_argument(const std::string& arg, const std::string& what) {
  if (!arg.empty() && arg[0] == '@') return parse_json_text(slurp(arg.substr(1)), what);
  return parse_json_text(arg, what);
}

std::vector<cplx> complex_list(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array of complex values");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(io::complex_from_json(e));
  return out;
}

std::vector<double> real_list(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array of reals");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) fail(ErrorCode::ParseError, "expected an array of reals");
    out.push_back(e.get<double>());
  }
  return out;
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config key ") + key + ": " + e.what());
  }
}

void apply_config(RunConfig& c, const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "config must be a JSON object");
  if (j.contains("command")) c.command = get_as<std::string>(j, "command");
  if (j.contains("p")) c.p = get_as<double>(j, "p");
  if (j.contains("degree")) c.degree = get_as<std::size_t>(j, "degree");
  if (j.contains("grid_m")) c.grid_m = get_as<std::size_t>(j, "grid_m");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("g")) c.g = io::series_from_json(j.at("g"));
  if (j.contains("f")) c.f = io::series_from_json(j.at("f"));
  if (j.contains("op")) c.op = get_as<std::string>(j, "op");
  if (j.contains("lambdas")) c.lambdas = complex_list(j.at("lambdas"));
  if (j.contains("radii")) c.radii = real_list(j.at("radii"));
  if (j.contains("eps")) c.eps = real_list(j.at("eps"));
  if (j.contains("a")) c.a = get_as<double>(j, "a");
  if (j.contains("eps_fixed")) c.eps_fixed = get_as<double>(j, "eps_fixed");
  if (j.contains("grid")) {
    const QuadratureSpec q = io::quadrature_from_json(j.at("grid"));
    c.radial_nodes = q.radial_nodes;
    c.angular_nodes = q.angular_nodes;
  }
  if (j.contains("tol")) c.tol = get_as<double>(j, "tol");
  if (j.contains("terms")) c.terms = get_as<int>(j, "terms");
  if (j.contains("delta")) c.delta = get_as<double>(j, "delta");
  if (j.contains("trials")) c.trials = get_as<int>(j, "trials");
  if (j.contains("nodes_per_panel")) c.nodes_per_panel = get_as<int>(j, "nodes_per_panel");
  if (j.contains("k_last")) c.k_last = get_as<int>(j, "k_last");
}

const ComplexSeries& need(const std::optional<ComplexSeries>& s, const char* name) {
  if (!s) fail(ErrorCode::ParseError, std::string("missing input series --") + name);
  return *s;
}

std::vector<double> radii_or_default(const RunConfig& c) {
  return c.radii.empty() ? std::vector<double>{0.9, 0.99, 0.999} : c.radii;
}

json header(const RunConfig& c) {
  return {{"schema", "hvl/1"}, {"command", c.command}, {"p", c.p}, {"seed", c.seed}};
}

struct Outcome {
  json report;
  int code = kOk;
};

Outcome cmd_norm(const RunConfig& c) {
  const ComplexSeries& f = need(c.f, "f");
  const Exponent p(c.p);
  const std::size_t M = c.grid_m ? c.grid_m : default_grid_size(f.degree());
  const BoundaryGrid grid = boundary_samples(f, M);
  std::ofstream os(c.out / "grid.csv", std::ios::binary);
  io::write_grid_csv(os, grid);
  json r = header(c);
  r["grid"] = {{"m", M}, {"rule", "trapezoid"}};
  r["degree"] = f.degree();
  r["hp_norm"] = hp_norm(grid, p);
  r["hinf_estimate"] = hinf_norm(f, M);
  return {r};
}

Outcome cmd_apply(const RunConfig& c) {
  const Symbol g(need(c.g, "g"));
  const ComplexSeries& f = need(c.f, "f");
  const std::size_t out = c.degree ? c.degree : f.degree() + g.degree();
  ComplexSeries y;
  if (c.op == "S") {
    y = apply_Sg(g, f, out);
  } else if (c.op == "T") {
    y = apply_Tg(g, f, out);
  } else if (c.op == "M") {
    y = apply_Mg(g, f, out);
  } else {
    fail(ErrorCode::ParseError, "--op must be S, T or M");
  }
  io::write_json(c.out / "output.json", io::to_json(y));
  json r = header(c);
  r["operator"] = c.op;
  r["out_degree"] = out;
  r["output"] = io::to_json(y);
  return {r};
}

Outcome cmd_spectrum(const RunConfig& c) {
  const Symbol g(need(c.g, "g"));
  if (c.lambdas.empty()) fail(ErrorCode::ParseError, "spectrum needs --lambdas");
  SpectrumOptions opt;
  opt.radial_levels = c.radial_nodes;
  opt.angular_nodes = c.angular_nodes;
  opt.tol = c.tol;
  opt.p = Exponent(c.p);
  opt.grid_m = c.grid_m;
  if (c.degree) opt.probe_degree = c.degree;
  const SpectrumReport rep = spectrum_report(g, c.lambdas, opt);
  io::write_spectrum_report(c.out, rep);
  json r = header(c);
  r["grid"] = {{"radial_levels", opt.radial_levels},
               {"angular_nodes", opt.angular_nodes},
               {"tol", opt.tol},
               {"probe_degree", opt.probe_degree},
               {"grid_m", opt.grid_m}};
  r["sup_estimate"] = g.sup_estimate();
  const json body = io::to_json(rep);
  r["verdicts"] = body["verdicts"];
  r["probes"] = body["probes"];
  r["files"] = {"cloud.csv", "verdicts.csv", "probes.csv", "spectrum.json"};
  return {r};
}

Outcome cmd_pseudospectrum(const RunConfig& c) {
  const Symbol g(need(c.g, "g"));
  if (c.lambdas.empty()) fail(ErrorCode::ParseError, "pseudospectrum needs --lambdas");
  const std::size_t N = c.degree ? c.degree : std::max<std::size_t>(64, 4 * g.degree());
  const auto pts = pseudospectrum_grid(g, N, c.lambdas, Exponent(c.p));
  std::ofstream os(c.out / "pseudospectrum.csv", std::ios::binary);
  os << "lambda_re,lambda_im,n,sigma_min\n";
  json rows = json::array();
  for (const auto& q : pts) {
    os << io::format_double(q.lambda.real()) << ',' << io::format_double(q.lambda.imag()) << ','
       << N << ',' << io::format_double(q.sigma_min) << '\n';
    rows.push_back({{"lambda", io::to_json(q.lambda)}, {"sigma_min", q.sigma_min}});
  }
  json r = header(c);
  r["grid"] = {{"matrix_size", N}};
  r["points"] = rows;
  return {r};
}

std::vector<std::size_t> sweep_levels(const RunConfig& c, const ComplexSeries& g) {
  const std::size_t L =
      c.degree ? c.degree : std::max<std::size_t>(1, (g.degree() + 3) / 4);
  return {L, 2 * L, 4 * L};
}

Outcome cmd_verify_boundedness(const RunConfig& c) {
  const ComplexSeries& g = need(c.g, "g");
  const auto radii = radii_or_default(c);
  const auto levels = sweep_levels(c, g);
  const TrendSweep t = boundedness_trend(g, Exponent(c.p), radii, levels);
  json r = header(c);
  r["grid"] = {{"rule", "trapezoid"}, {"grid_m", "max(4 (deg f_a + deg g), 512)"}};
  r["sweep"] = io::to_json(t);
  r["classification"] = t.classification;
  return {r, t.classification == "inconclusive" ? kInconclusive : kOk};
}

Outcome cmd_verify_compactness(const RunConfig& c) {
  const ComplexSeries& gs = need(c.g, "g");
  const Symbol g(gs);
  const Exponent p(c.p);
  const auto radii = radii_or_default(c);
  const WitnessSequence w = noncompactness_witness(g, p, radii);
  const TrendSweep t = boundedness_trend(gs, p, radii, sweep_levels(c, gs));
  json r = header(c);
  r["grid"] = {{"rule", "trapezoid"}, {"grid_m", "max(4 (deg f_a + deg g), 512)"}};
  r["witness"] = io::to_json(w);
  r["sweep"] = io::to_json(t);
  // Normalized test functions tend weakly to 0; images bounded below rule out compactness.
  r["interpretation"] = "non-compact witness";
  return {r};
}

Outcome cmd_lemma1(const RunConfig& c) {
  const Symbol g(need(c.g, "g"));
  const std::vector<double> eps =
      c.eps.empty() ? std::vector<double>{2.0, 1.0, 0.5, 0.25, 0.125} : c.eps;
  const auto radii = radii_or_default(c);
  const Lemma1Tables t = lemma1_tables(g, Exponent(c.p), c.a, eps, c.eps_fixed, radii);
  json r = header(c);
  r["grid"] = {{"rule", "trapezoid"}, {"grid_m", t.grid_m}};
  r["tables"] = io::to_json(t);
  const bool ok = t.arc_decreasing() && t.complement_decreasing() && t.dominated();
  r["verdict"] = ok ? "decay confirmed" : "inconclusive";
  return {r, ok ? kOk : kInconclusive};
}

Outcome cmd_basis_experiment(const RunConfig& c) {
  const Symbol g(need(c.g, "g"));
  const Exponent p(c.p);
  const double delta = c.delta ? *c.delta : default_delta(p);
  const auto gaps = dyadic_gaps(1, c.k_last);
  const WitnessSequence w = noncompactness_witness_from_gaps(g, p, gaps, c.nodes_per_panel);
  const SelectionResult s = greedy_selection(w, g, delta, c.terms, c.nodes_per_panel);
  // The same conditions on a finer rule; the drift is the quadrature error.
  const SelectionResult fine = recheck_selection(s, g, 2 * c.nodes_per_panel);
  double qerr = 0.0, min_margin = std::numeric_limits<double>::infinity();
  bool confirmed = true;
  for (std::size_t i = 0; i < s.conditions.size(); ++i) {
    qerr = std::max(qerr, std::abs(s.conditions[i].value - fine.conditions[i].value));
  }
  for (std::size_t i = 0; i < s.conditions.size(); ++i) {
    min_margin = std::min(min_margin, fine.conditions[i].margin());
    if (!(fine.conditions[i].margin() > qerr)) confirmed = false;
  }
  const FrameBounds fb = frame_bounds(g, s, c.trials, c.seed, c.nodes_per_panel);
  const FrameBounds fi = basis_frame_bounds_identity(s, c.trials, c.seed, c.nodes_per_panel);

  io::write_text(c.out / "selection.txt", io::selection_text_report(s));
  json r = header(c);
  r["grid"] = {{"rule", "dyadic Gauss-Legendre panels"},
               {"nodes_per_panel", c.nodes_per_panel},
               {"recheck_nodes_per_panel", 2 * c.nodes_per_panel},
               {"witness_gaps", "2^-k, k = 1.." + std::to_string(c.k_last)}};
  r["witness_h"] = w.h;
  r["selection"] = io::to_json(s);
  r["quadrature_error"] = qerr;
  r["min_margin"] = min_margin;
  r["frame_bounds"] = io::to_json(fb);
  r["identity_frame_bounds"] = io::to_json(fi);
  r["predicted_lower_bound"] = predicted_lower_frame_bound(s);
  r["verdict"] = confirmed ? "selection confirmed" : "inconclusive";
  return {r, confirmed ? kOk : kInconclusive};
}

void emit_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << json{{"code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Volterra-type operators on Hardy spaces: norms, spectra and experiments", "hvl"};
  std::string command, config, g, f, lambdas, radii, eps, grid;
  double p = 0, a = 0, eps_fixed = 0, tol = 0, delta = 0;
  std::size_t degree = 0, grid_m = 0;
  std::uint64_t seed = 0;
  std::string out_dir, op;
  int terms = 0, trials = 0, nodes = 0, k_last = 0;

  app.add_option("command", command, "Command to run")
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config, "JSON config file; flags override its keys");
  app.add_option("--p", p, "Hardy exponent p > 0");
  app.add_option("--degree", degree, "Truncation / output degree / matrix size");
  app.add_option("--grid-m", grid_m, "Boundary grid size");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--g", g, "Symbol series: JSON [[re,im],...] or @file");
  app.add_option("--f", f, "Input series: JSON [[re,im],...] or @file");
  app.add_option("--op", op, "apply: S, T or M");
  app.add_option("--lambdas", lambdas, "JSON array of complex points");
  app.add_option("--radii", radii, "JSON array of radii in (0, 1)");
  app.add_option("--eps", eps, "lemma1: JSON array of arc widths");
  app.add_option("--a", a, "lemma1: test point radius");
  app.add_option("--eps-fixed", eps_fixed, "lemma1: arc width for the complement sweep");
  app.add_option("--grid", grid, "JSON {radial_nodes, angular_nodes}");
  app.add_option("--tol", tol, "spectrum: membership tolerance");
  app.add_option("--terms", terms, "basis-experiment: number of selected terms");
  app.add_option("--delta", delta, "basis-experiment: delta");
  app.add_option("--trials", trials, "basis-experiment: random coefficient vectors");
  app.add_option("--nodes-per-panel", nodes, "basis-experiment: Gauss nodes per panel");
  app.add_option("--k-last", k_last, "basis-experiment: witness gaps 2^-1..2^-k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::ParseError, e.what());
  }

  RunConfig c;
  if (app.count("--config")) apply_config(c, parse_json_text(slurp(config), "config"));
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("command")) c.command = command;
  if (given("--p")) c.p = p;
  if (given("--degree")) c.degree = degree;
  if (given("--grid-m")) c.grid_m = grid_m;
  if (given("--seed")) c.seed = seed;
  if (given("--out")) c.out = out_dir;
  if (given("--g")) c.g = io::series_from_json(json_argument(g, "--g"));
  if (given("--f")) c.f = io::series_from_json(json_argument(f, "--f"));
  if (given("--op")) c.op = op;
  if (given("--lambdas")) c.lambdas = complex_list(json_argument(lambdas, "--lambdas"));
  if (given("--radii")) c.radii = real_list(json_argument(radii, "--radii"));
  if (given("--eps")) c.eps = real_list(json_argument(eps, "--eps"));
  if (given("--a")) c.a = a;
  if (given("--eps-fixed")) c.eps_fixed = eps_fixed;
  if (given("--grid")) {
    const QuadratureSpec q = io::quadrature_from_json(json_argument(grid, "--grid"));
    c.radial_nodes = q.radial_nodes;
    c.angular_nodes = q.angular_nodes;
  }
  if (given("--tol")) c.tol = tol;
  if (given("--terms")) c.terms = terms;
  if (given("--delta")) c.delta = delta;
  if (given("--trials")) c.trials = trials;
  if (given("--nodes-per-panel")) c.nodes_per_panel = nodes;
  if (given("--k-last")) c.k_last = k_last;

  if (c.command.empty()) fail(ErrorCode::ParseError, "no command given");
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    fail(ErrorCode::ParseError, "unknown command " + c.command);
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(c.out);
    Outcome o;
    if (c.command == "norm") {
      o = cmd_norm(c);
    } else if (c.command == "apply") {
      o = cmd_apply(c);
    } else if (c.command == "spectrum") {
      o = cmd_spectrum(c);
    } else if (c.command == "pseudospectrum") {
      o = cmd_pseudospectrum(c);
    } else if (c.command == "verify-boundedness") {
      o = cmd_verify_boundedness(c);
    } else if (c.command == "verify-compactness") {
      o = cmd_verify_compactness(c);
    } else if (c.command == "lemma1") {
      o = cmd_lemma1(c);
    } else if (c.command == "basis-experiment") {
      o = cmd_basis_experiment(c);
    } else {
      fail(ErrorCode::ParseError, "unknown command " + c.command);
    }
    o.report["exit_code"] = o.code;
    io::write_json(c.out / "report.json", o.report);
    out << (c.out / "report.json").string() << '\n';
    return o.code;
  } catch (const Error& e) {
    emit_error(err, to_string(e.code()), e.what());
    const bool input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument;
    return input ? kParseFailure : kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    emit_error(err, "IoError", e.what());
    return kNumericalFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> c;
  try {
    c = parse_args(argc, argv, out);
  } catch (const Error& e) {
    emit_error(err, to_string(e.code()), e.what());
    return kParseFailure;
  }
  if (!c) return kOk;
  return run(*c, out, err);
}

}  // namespace hvl::cli
