#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cyclordf {

using CsvValue = std::variant<double, std::int64_t, bool, std::string>;
using CsvRow = std::vector<CsvValue>;

struct CsvSchema {
  std::vector<std::string> columns;
};

/// Header + rows, doubles with 12 significant digits, '\n' line endings.
/// Rows are written in the given order. Throws InvalidArgument on a row of the
/// wrong width.
std::string format_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema);

/// Writes the CSV and returns the SHA-256 hex digest of the written bytes.
/// Throws Error(Io) naming the path on failure.
std::string emit_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema,
                     const std::string& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace cyclordf
