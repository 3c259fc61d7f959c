#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "honeypol/lattice.hpp"
#include "honeypol/polarization.hpp"

namespace honeypol {

/// printf-style %.{digits}Lg.
std::string format_significant(long double value, int digits);

/// Header `alpha,hex_value,honey_value,gap,regime,certified`, LF endings,
/// 12 significant digits.
std::string sweep_to_csv(const SweepReport &report);

/// JSON object {density, rows: [...]}, 17 significant digits.
std::string sweep_to_json(const SweepReport &report);

/// Inverse of sweep_to_json. Throws ValidationError on malformed input.
SweepReport sweep_from_json(std::string_view text);

/// {"basis": [[b11, b12], [b21, b22]], "shifts": [[x, y], ...]}, generators
/// in the columns.
std::string config_to_json(const PeriodicConfiguration &config);

/// Parses and validates a configuration. Throws ValidationError for schema
/// errors, singular bases and shifts congruent modulo the lattice.
PeriodicConfiguration config_from_json(std::string_view text);

/// config_from_json on a file; throws IoError when it cannot be read.
PeriodicConfiguration load_custom_structure(const std::filesystem::path &path);

}  // namespace honeypol
