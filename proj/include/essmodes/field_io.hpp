#pragma once

// Persistence for NormalStateField: a JSON header (geometry, spectrum, grids)
// plus a CSV amplitude table with columns x,omega,re,im. Floats are written
// as shortest round-trip decimals, so a write/read cycle is lossless.

#include "essmodes/diffraction.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace essmodes {

[[nodiscard]] std::string format_double(double v);
// Throws std::invalid_argument unless the whole token parses.
[[nodiscard]] double parse_double(std::string_view token);

void write_field(const NormalStateField& field, const std::filesystem::path& header_json,
                 const std::filesystem::path& table_csv);

[[nodiscard]] NormalStateField read_field(const std::filesystem::path& header_json,
                                          const std::filesystem::path& table_csv);

}  // namespace essmodes
