#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gruss/bounds.hpp"
#include "gruss/matrix.hpp"
#include "gruss/spectral.hpp"
#include "gruss/zoo.hpp"

namespace gruss {

using json = nlohmann::json;

// Matrix format: {"n": int, "entries": [[re, im], ...]} row-major, n*n long.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
/// Matrix format plus the density-operator invariants.
DensityOperator state_from_json(const json& j,
                                const OptimizerSettings& settings = {});

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

// {"center": [re, im], "radius": r}
json disc_to_json(const Disc& d);
Disc disc_from_json(const json& j);
json points_to_json(std::span<const Complex> points);

// {"terms": [{"label", "value"}...], "slacks": [...], "holds": [...],
//  "meta": {...}}
json report_to_json(const BoundChainReport& r);

json zoo_spec_to_json(const ZooSpec& s);
ZooSpec zoo_spec_from_json(const json& j);

/// FNV-1a over the raw entry bytes, as 16 hex digits.
std::string fingerprint(const ComplexMatrix& m);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// File helpers; throw ParseError on unreadable or malformed input.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gruss
