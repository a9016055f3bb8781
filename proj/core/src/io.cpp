#include "weylwalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace weylwalk::io {

using nlohmann::json;

std::string_view to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::malformed_json:
      return "malformed_json";
    case ParseErrorCode::unknown_version:
      return "unknown_version";
    case ParseErrorCode::missing_field:
      return "missing_field";
    case ParseErrorCode::type_mismatch:
      return "type_mismatch";
    case ParseErrorCode::shape_mismatch:
      return "shape_mismatch";
    case ParseErrorCode::duplicate_displacement:
      return "duplicate_displacement";
    case ParseErrorCode::invalid_value:
      return "invalid_value";
  }
  return "unknown";
}

namespace {

std::string describe(ParseErrorCode code, const std::string& path, const std::string& message,
                     std::size_t line) {
  std::ostringstream out;
  out << to_string(code);
  if (line > 0) out << " at line " << line;
  if (!path.empty()) out << " at " << path;
  out << ": " << message;
  return out.str();
}

constexpr std::int64_t kMaxDisplacement = 1'000'000'000;

[[noreturn]] void fail(ParseErrorCode code, const std::string& path, const std::string& message) {
  throw ParseError(code, path, message);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ParseErrorCode::missing_field, path.empty() ? key : path + "." + key, "field is required");
  return *it;
}

std::int64_t integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(ParseErrorCode::type_mismatch, path, "expected an integer");
  if (value.is_number_unsigned()) {
    const auto u = value.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      fail(ParseErrorCode::invalid_value, path, "integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  return value.get<std::int64_t>();
}

double real(const json& value, const std::string& path) {
  if (!value.is_number()) fail(ParseErrorCode::type_mismatch, path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(ParseErrorCode::invalid_value, path, "number is not finite");
  return x;
}

const json& array(const json& value, const std::string& path) {
  if (!value.is_array()) fail(ParseErrorCode::type_mismatch, path, "expected an array");
  return value;
}

Matrix parse_matrix(const json& value, std::int64_t k, const std::string& path) {
  const json& rows = array(value, path);
  if (static_cast<std::int64_t>(rows.size()) != k) {
    fail(ParseErrorCode::shape_mismatch, path,
         "expected " + std::to_string(k) + " rows, found " + std::to_string(rows.size()));
  }
  Matrix m(k, k);
  for (std::int64_t r = 0; r < k; ++r) {
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    const json& row = array(rows[static_cast<std::size_t>(r)], rpath);
    if (static_cast<std::int64_t>(row.size()) != k) {
      fail(ParseErrorCode::shape_mismatch, rpath,
           "expected " + std::to_string(k) + " entries, found " + std::to_string(row.size()));
    }
    for (std::int64_t c = 0; c < k; ++c) {
      const std::string epath = rpath + "[" + std::to_string(c) + "]";
      const json& entry = array(row[static_cast<std::size_t>(c)], epath);
      if (entry.size() != 2) fail(ParseErrorCode::shape_mismatch, epath, "expected a [re, im] pair");
      m(r, c) = Complex(real(entry[0], epath + "[0]"), real(entry[1], epath + "[1]"));
    }
  }
  return m;
}

}  // namespace

ParseError::ParseError(ParseErrorCode code, std::string path, std::string message, std::size_t line)
    : Error(describe(code, path, message, line)), code_(code), path_(std::move(path)), line_(line) {}

WalkSpec parse_walk(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(ParseErrorCode::malformed_json, "", e.what(), line);
  } catch (const json::out_of_range& e) {
    throw ParseError(ParseErrorCode::invalid_value, "", e.what());
  }
  if (!doc.is_object()) fail(ParseErrorCode::type_mismatch, "", "document must be a JSON object");

  const json& version = field(doc, "format", "");
  if (!version.is_string()) fail(ParseErrorCode::type_mismatch, "format", "expected a string");
  if (version.get<std::string>() != kFormatVersion) {
    fail(ParseErrorCode::unknown_version, "format", "unsupported format " + version.dump());
  }

  const std::int64_t d = integer(field(doc, "d", ""), "d");
  const std::int64_t k = integer(field(doc, "k", ""), "k");
  if (d < 1) fail(ParseErrorCode::invalid_value, "d", "spatial dimension must be >= 1");
  if (k < 1) fail(ParseErrorCode::invalid_value, "k", "internal dimension must be >= 1");

  const json& scale_obj = field(doc, "scale", "");
  if (!scale_obj.is_object()) fail(ParseErrorCode::type_mismatch, "scale", "expected an object");
  LatticeScale scale{real(field(scale_obj, "a", "scale"), "scale.a"),
                     real(field(scale_obj, "dt", "scale"), "scale.dt")};
  if (!(scale.a > 0.0)) fail(ParseErrorCode::invalid_value, "scale.a", "lattice spacing must be positive");
  if (!(scale.dt > 0.0)) fail(ParseErrorCode::invalid_value, "scale.dt", "time step must be positive");
  if (!std::isfinite(scale.speed())) fail(ParseErrorCode::invalid_value, "scale", "a/dt is not finite");

  const json& coin_list = array(field(doc, "coins", ""), "coins");
  if (coin_list.empty()) fail(ParseErrorCode::invalid_value, "coins", "coin support is empty");

  CoinMap coins;
  for (std::size_t i = 0; i < coin_list.size(); ++i) {
    const std::string cpath = "coins[" + std::to_string(i) + "]";
    const json& coin = coin_list[i];
    if (!coin.is_object()) fail(ParseErrorCode::type_mismatch, cpath, "expected an object");

    const json& q_json = array(field(coin, "q", cpath), cpath + ".q");
    if (static_cast<std::int64_t>(q_json.size()) != d) {
      fail(ParseErrorCode::shape_mismatch, cpath + ".q",
           "expected " + std::to_string(d) + " components, found " + std::to_string(q_json.size()));
    }
    std::vector<std::int64_t> q(static_cast<std::size_t>(d));
    for (std::size_t j = 0; j < q.size(); ++j) {
      const std::string qpath = cpath + ".q[" + std::to_string(j) + "]";
      q[j] = integer(q_json[j], qpath);
      if (q[j] > kMaxDisplacement || q[j] < -kMaxDisplacement) {
        fail(ParseErrorCode::invalid_value, qpath, "displacement component out of range");
      }
    }
    Matrix m = parse_matrix(field(coin, "matrix", cpath), k, cpath + ".matrix");
    if (!coins.emplace(Displacement(std::move(q)), std::move(m)).second) {
      fail(ParseErrorCode::duplicate_displacement, cpath + ".q", "displacement appears twice");
    }
  }

  try {
    return WalkSpec(static_cast<int>(d), static_cast<int>(k), std::move(coins), scale);
  } catch (const StructuralError& e) {
    fail(ParseErrorCode::invalid_value, "", e.what());
  }
}

std::string serialize_walk(const WalkSpec& spec) {
  nlohmann::ordered_json doc;
  doc["format"] = kFormatVersion;
  doc["d"] = spec.dim();
  doc["k"] = spec.internal_dim();
  doc["scale"] = {{"a", spec.scale().a}, {"dt", spec.scale().dt}};
  auto coins = nlohmann::ordered_json::array();
  for (const auto& [q, aq] : spec.coins()) {
    nlohmann::ordered_json coin;
    coin["q"] = q.components();
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < aq.rows(); ++r) {
      auto row = nlohmann::ordered_json::array();
      for (Eigen::Index c = 0; c < aq.cols(); ++c) row.push_back({aq(r, c).real(), aq(r, c).imag()});
      rows.push_back(std::move(row));
    }
    coin["matrix"] = std::move(rows);
    coins.push_back(std::move(coin));
  }
  doc["coins"] = std::move(coins);
  return doc.dump(2) + "\n";
}

WalkSpec load_walk(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_walk(buf.str());
}

void save_walk(const std::filesystem::path& path, const WalkSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_walk(spec);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace weylwalk::io
