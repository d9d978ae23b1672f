#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hvl/series.hpp"

namespace hvl::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseFailure = 2;
inline constexpr int kNumericalFailure = 3;
inline constexpr int kInconclusive = 4;

struct RunConfig {
  std::string command;
  double p = 2.0;
  std::size_t degree = 0;  // 0: command default
  std::size_t grid_m = 0;  // 0: default_grid_size of the series involved
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";

  std::optional<ComplexSeries> g;
  std::optional<ComplexSeries> f;
  std::string op = "S";  // apply: S, T or M
  std::vector<cplx> lambdas;
  std::vector<double> radii;  // empty: {0.9, 0.99, 0.999}
  std::vector<double> eps;    // lemma1 arc sweep; empty: {2, 1, 1/2, 1/4, 1/8}
  double a = 0.99;
  double eps_fixed = 0.5;
  int radial_nodes = 32;
  int angular_nodes = 256;
  double tol = 0.02;
  int terms = 6;
  std::optional<double> delta;
  int trials = 100;
  int nodes_per_panel = 16;
  int k_last = 400;
};

/// Flags override keys of --config. Throws Error(ParseError) on bad input;
/// returns nullopt after printing help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one command, writing report.json (and CSV files) under config.out.
/// Failures go to err as one-line JSON {code, message}.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error mapping; the body of main.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hvl::cli
