#include "hvl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hvl/error.hpp"

namespace hvl::io {
namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::ParseError, std::string("expected a number for ") + what);
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::ParseError, std::string("non-finite ") + what);
  return x;
}

// nlohmann writes non-finite doubles as null; keep them readable instead.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  return os;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {finite_number(j, "real value"), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
  }
  fail(ErrorCode::ParseError, "complex values are [re, im] pairs or plain numbers");
}

json to_json(const ComplexSeries& f) {
  json out = json::array();
  for (cplx c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

ComplexSeries series_from_json(const json& j) {
  if (j.is_number()) return ComplexSeries::constant(complex_from_json(j));
  if (!j.is_array() || j.empty()) {
    fail(ErrorCode::ParseError, "series must be a non-empty array of [re, im] pairs");
  }
  std::vector<cplx> c;
  c.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array()) fail(ErrorCode::ParseError, "series entries must be [re, im] pairs");
    c.push_back(complex_from_json(e));
  }
  return ComplexSeries(std::move(c));
}

ComplexSeries parse_series(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("series JSON: ") + e.what());
  }
  return series_from_json(j);
}

ComplexSeries read_series_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::ParseError, "cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_series(ss.str());
}

json to_json(const QuadratureSpec& q) {
  return {{"radial_nodes", q.radial_nodes}, {"angular_nodes", q.angular_nodes}};
}

QuadratureSpec quadrature_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "quadrature spec must be an object");
  QuadratureSpec q;
  try {
    if (j.contains("radial_nodes")) q.radial_nodes = j.at("radial_nodes").get<int>();
    if (j.contains("angular_nodes")) q.angular_nodes = j.at("angular_nodes").get<int>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("quadrature spec: ") + e.what());
  }
  return q;
}

void write_grid_csv(std::ostream& os, const BoundaryGrid& grid) {
  os << "theta,re,im\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    os << format_double(grid.theta(j)) << ',' << format_double(grid.samples[j].real()) << ','
       << format_double(grid.samples[j].imag()) << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& A) {
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < A.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.entries.cols(); ++c) {
      const cplx v = A.entries(r, c);
      if (v == cplx{}) continue;
      os << r << ',' << c << ',' << format_double(v.real()) << ',' << format_double(v.imag())
         << '\n';
    }
  }
}

void write_cloud_csv(std::ostream& os, std::span<const cplx> cloud) {
  os << "re,im\n";
  for (cplx z : cloud) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

void write_verdicts_csv(std::ostream& os, const SpectrumReport& r) {
  os << "lambda_re,lambda_im,verdict,distance\n";
  for (const auto& v : r.verdicts) {
    os << format_double(v.lambda.real()) << ',' << format_double(v.lambda.imag()) << ','
       << to_string(v.verdict) << ',' << format_double(v.distance) << '\n';
  }
}

void write_probes_csv(std::ostream& os, const SpectrumReport& r) {
  os << "lambda_re,lambda_im,resolvent_norm\n";
  for (const auto& v : r.probe_norms) {
    os << format_double(v.lambda.real()) << ',' << format_double(v.lambda.imag()) << ','
       << (v.norm ? format_double(*v.norm) : std::string("singular")) << '\n';
  }
}

json to_json(const SpectrumReport& r) {
  json cloud = json::array();
  for (cplx z : r.image_cloud) cloud.push_back(to_json(z));
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"lambda", to_json(v.lambda)},
                        {"verdict", std::string(to_string(v.verdict))},
                        {"distance", number(v.distance)}});
  }
  json probes = json::array();
  for (const auto& v : r.probe_norms) {
    probes.push_back({{"lambda", to_json(v.lambda)},
                      {"resolvent_norm", v.norm ? number(*v.norm) : json("singular")}});
  }
  return {{"image_cloud", cloud}, {"verdicts", verdicts}, {"probes", probes}};
}

void write_spectrum_report(const std::filesystem::path& dir, const SpectrumReport& r) {
  std::filesystem::create_directories(dir);
  {
    auto os = open_out(dir / "cloud.csv");
    write_cloud_csv(os, r.image_cloud);
  }
  {
    auto os = open_out(dir / "verdicts.csv");
    write_verdicts_csv(os, r);
  }
  {
    auto os = open_out(dir / "probes.csv");
    write_probes_csv(os, r);
  }
  write_json(dir / "spectrum.json", to_json(r));
}

json to_json(const WitnessSequence& w) {
  json rows = json::array();
  for (std::size_t n = 0; n < w.size(); ++n) {
    rows.push_back({{"gap", number(w.gaps[n])}, {"radius", number(w.radius(n))},
                    {"value", number(w.values[n])}});
  }
  return {{"p", w.p.value()}, {"h", number(w.h)}, {"members", rows}};
}

json to_json(const ConditionRecord& c) {
  return {{"condition", c.condition}, {"n", c.n},
          {"k", c.k},                 {"value", number(c.value)},
          {"threshold", number(c.threshold)}, {"margin", number(c.margin())},
          {"holds", c.holds()}};
}

json to_json(const SelectionResult& s) {
  json eps = json::array(), gaps = json::array(), idx = json::array(), cond = json::array();
  for (double e : s.epsilons) eps.push_back(number(e));
  for (double g : s.chosen_gaps) gaps.push_back(number(g));
  for (std::size_t i : s.chosen_index) idx.push_back(i);
  for (const auto& c : s.conditions) cond.push_back(to_json(c));
  return {{"p", s.p.value()},
          {"delta", number(s.delta)},
          {"h", number(s.h)},
          {"nodes_per_panel", s.nodes_per_panel},
          {"terms", s.terms()},
          {"epsilons", eps},
          {"chosen_index", idx},
          {"chosen_gaps", gaps},
          {"conditions", cond},
          {"all_hold", s.all_hold()}};
}

json to_json(const FrameBounds& b) {
  return {{"c_low", number(b.c_low)}, {"c_high", number(b.c_high)}, {"trials", b.trials}};
}

json to_json(const Lemma1Tables& t) {
  json arcs = json::array(), tails = json::array();
  for (std::size_t i = 0; i < t.eps.size(); ++i) {
    arcs.push_back({{"eps", number(t.eps[i])}, {"integral", number(t.arc_values[i])}});
  }
  for (std::size_t i = 0; i < t.radii.size(); ++i) {
    tails.push_back({{"radius", number(t.radii[i])},
                     {"complement_integral", number(t.complement_values[i])},
                     {"tail_bound", number(t.tail_bounds[i])}});
  }
  return {{"a", number(t.a)},
          {"eps_fixed", number(t.eps_fixed)},
          {"gamma", number(t.gamma)},
          {"grid_m", t.grid_m},
          {"arc_integrals", arcs},
          {"complement_integrals", tails},
          {"arc_decreasing", t.arc_decreasing()},
          {"complement_decreasing", t.complement_decreasing()},
          {"dominated", t.dominated()}};
}

json to_json(const TrendSweep& t) {
  json rows = json::array();
  for (std::size_t l = 0; l < t.levels.size(); ++l) {
    json pts = json::array();
    for (std::size_t j = 0; j < t.radii.size(); ++j) {
      const std::size_t N = f_a_truncation_degree(t.radii[j]);
      pts.push_back({{"radius", number(t.radii[j])},
                     {"sg_norm", number(t.raw[l][j])},
                     {"ratio", number(t.ratios[l][j])},
                     {"fa_degree", N},
                     {"grid_m", default_grid_size(N + t.levels[l])}});
    }
    rows.push_back({{"truncation", t.levels[l]}, {"points", pts}});
  }
  return {{"levels", rows},
          {"variation", number(t.sweep_variation())},
          {"growth", number(t.sweep_growth())},
          {"classification", t.classification}};
}

std::string selection_text_report(const SelectionResult& s) {
  std::ostringstream os;
  os << "p = " << format_double(s.p.value()) << ", delta = " << format_double(s.delta)
     << ", h = " << format_double(s.h) << ", nodes/panel = " << s.nodes_per_panel << '\n';
  for (std::size_t n = 0; n < s.terms(); ++n) {
    os << "term " << n + 1 << ": eps = " << format_double(s.epsilons[n])
       << ", 1 - b = " << format_double(s.chosen_gaps[n]) << '\n';
  }
  for (const auto& c : s.conditions) {
    os << "cond " << c.condition << " n=" << c.n << " k=" << c.k << "  "
       << format_double(c.value) << (c.condition == 3 ? " > " : " < ")
       << format_double(c.threshold) << "  margin " << format_double(c.margin()) << "  "
       << (c.holds() ? "ok" : "VIOLATED") << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  auto os = open_out(path);
  os << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace hvl::io
