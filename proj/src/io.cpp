#include "soot/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace soot {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Vec read_column_csv(std::istream& in) {
  Vec out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw IoError("csv line " + std::to_string(line_no) + ": not a number: '" +
                        std::string(field) + "'");
    }
    if (!std::isfinite(v)) {
      throw IoError("csv line " + std::to_string(line_no) + ": non-finite value");
    }
    out.push_back(v);
  }
  return out;
}

void write_column_csv(std::ostream& out, ConstSpan values) {
  char buf[64];
  for (double v : values) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

Vec read_json_array(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("json: ") + e.what());
  }
  if (!j.is_array()) throw IoError("json: expected an array of numbers");
  Vec out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw IoError("json: array entries must be finite numbers");
    const double v = e.get<double>();
    if (!std::isfinite(v)) throw IoError("json: non-finite value");
    out.push_back(v);
  }
  return out;
}

void write_json_array(std::ostream& out, ConstSpan values) {
  out << nlohmann::json(Vec(values.begin(), values.end())).dump() << '\n';
}

Vec read_array_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return path.extension() == ".json" ? read_json_array(in) : read_column_csv(in);
}

void write_array_file(const std::filesystem::path& path, ConstSpan values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  if (path.extension() == ".json") {
    write_json_array(out, values);
  } else {
    write_column_csv(out, values);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace soot
