#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "weylwalk/errors.hpp"
#include "weylwalk/evolve.hpp"
#include "weylwalk/walk.hpp"

namespace weylwalk::io {

inline constexpr std::string_view kFormatVersion = "weylwalk/1";

enum class ParseErrorCode {
  malformed_json,
  unknown_version,
  missing_field,
  type_mismatch,
  shape_mismatch,
  duplicate_displacement,
  invalid_value,
};

std::string_view to_string(ParseErrorCode code);

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, std::string path, std::string message, std::size_t line = 0);

  ParseErrorCode code() const noexcept { return code_; }
  /// JSON path of the offending field, e.g. "coins[2].matrix[0]".
  const std::string& path() const noexcept { return path_; }
  /// 1-based line for syntax errors, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorCode code_;
  std::string path_;
  std::size_t line_;
};

/// Parses a weylwalk/1 JSON document. Unitarity is not checked.
WalkSpec parse_walk(std::string_view text);
std::string serialize_walk(const WalkSpec& spec);

WalkSpec load_walk(const std::filesystem::path& path);
void save_walk(const std::filesystem::path& path, const WalkSpec& spec);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits.
std::string format_double(double value);

/// RFC 4180: CRLF line ends, fields quoted when they contain , " CR or LF.
std::string emit_csv(const CsvTable& table);
std::string emit_csv(const DispersionTable& table);
std::string emit_csv(const BoundReport& report);
std::string emit_csv(const PacketTrace& trace);
std::string emit_csv(const ScalingFit& fit);

CsvTable to_table(const DispersionTable& table);
CsvTable to_table(const BoundReport& report);
CsvTable to_table(const PacketTrace& trace);
CsvTable to_table(const ScalingFit& fit);

}  // namespace weylwalk::io
