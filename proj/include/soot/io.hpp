#pragma once

// Signals and kernels on disk: single-column CSV (one value per line, no
// header) or a flat JSON array. Readers reject non-finite values.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "soot/common.hpp"

namespace soot {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vec read_column_csv(std::istream& in);
void write_column_csv(std::ostream& out, ConstSpan values);

Vec read_json_array(std::istream& in);
void write_json_array(std::ostream& out, ConstSpan values);

/// Dispatch on extension: ".json" is JSON, anything else single-column CSV.
Vec read_array_file(const std::filesystem::path& path);
void write_array_file(const std::filesystem::path& path, ConstSpan values);

}  // namespace soot
