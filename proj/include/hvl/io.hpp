#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hvl/hardy.hpp"
#include "hvl/series.hpp"
#include "hvl/singularity.hpp"
#include "hvl/spectrum.hpp"
#include "hvl/volterra.hpp"

namespace hvl::io {

using json = nlohmann::ordered_json;

/// [[re, im], ...], lowest degree first. A bare number is read as a constant;
/// a bare [re, im] pair is not accepted (ambiguous with a two-term real series).
json to_json(const ComplexSeries& f);
ComplexSeries series_from_json(const json& j);
ComplexSeries parse_series(std::string_view text);
ComplexSeries read_series_file(const std::filesystem::path& path);

/// Complex numbers travel as [re, im] pairs or plain reals.
json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const QuadratureSpec& q);
QuadratureSpec quadrature_from_json(const json& j);

/// %.17g, so values round-trip.
std::string format_double(double x);

/// theta, re, im
void write_grid_csv(std::ostream& os, const BoundaryGrid& grid);
/// row, col, re, im; zero entries omitted
void write_matrix_csv(std::ostream& os, const OperatorMatrix& A);

void write_cloud_csv(std::ostream& os, std::span<const cplx> cloud);
void write_verdicts_csv(std::ostream& os, const SpectrumReport& r);
void write_probes_csv(std::ostream& os, const SpectrumReport& r);
json to_json(const SpectrumReport& r);
/// cloud.csv, verdicts.csv, probes.csv, spectrum.json under dir.
void write_spectrum_report(const std::filesystem::path& dir, const SpectrumReport& r);

json to_json(const WitnessSequence& w);
json to_json(const ConditionRecord& c);
json to_json(const SelectionResult& s);
json to_json(const FrameBounds& b);
json to_json(const Lemma1Tables& t);
json to_json(const TrendSweep& t);

/// One line per stored condition: value against threshold, margin, status.
std::string selection_text_report(const SelectionResult& s);

void write_text(const std::filesystem::path& path, std::string_view text);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace hvl::io
