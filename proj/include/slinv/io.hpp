#pragma once
//
// File formats.
//
//   grid CSV        header "x,sigma", M+1 rows "x_i,value" with x_i = i/M ascending,
//                   15 significant digits
//   spectral JSON   {"kind":"DD|NT|ND|DN","lambda":[...],"alpha":[...],"h":number?}
//   stability CSV   header "eps,data_norm,sigma_error"
//   kernel CSV      header "i,j,k", one row per stored entry j <= i
//
// JSON numbers are written with round-trip (17 digit) precision.
//

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slinv/analysis.hpp"
#include "slinv/glm.hpp"
#include "slinv/grid.hpp"
#include "slinv/spectra.hpp"

namespace slinv::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

GridFunction parse_grid_csv(std::string_view text);
std::string format_grid_csv(const GridFunction& g);

SpectralData spectral_from_json(const json& j);
json to_json(const SpectralData& data);

json to_json(const ValidationReport& report);

// `sigma_csv` is recorded as a reference when non-empty; sigma is always
// inlined as well.
json to_json(const ReconstructionResult& result, BoundaryKind kind,
             const std::string& sigma_csv = {});

json to_json(const RoundTripReport& report);
json to_json(const std::vector<StabilityRow>& rows);

std::string format_stability_csv(const std::vector<StabilityRow>& rows);
std::string format_kernel_csv(const TriangularKernel& kernel);

// Parses "a,b,c" into doubles.
std::vector<double> parse_number_list(std::string_view text);

// Shortest-exact decimal for a double with at least 15 significant digits.
std::string format_number(double x, int digits = 17);

}  // namespace slinv::io
