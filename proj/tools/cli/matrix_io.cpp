#include "matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace dkit::cli {

namespace {

std::string where(const std::string& source, std::size_t line, std::size_t column) {
  std::string s = source;
  if (line > 0) s += ":" + std::to_string(line) + ":" + std::to_string(column);
  return s;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

using nlohmann::json;

double finite_number(const json& v, const std::string& source, const std::string& ptr) {
  if (!v.is_number()) throw InputError(source, 0, 0, "expected a number at " + ptr);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(source, 0, 0, "non-finite entry at " + ptr);
  return x;
}

ComplexMatrix parse_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw InputError(source, line, col, msg);
  }
  if (!doc.is_object()) throw InputError(source, 1, 1, "top level must be an object");
  for (const char* key : {"rows", "cols", "data"}) {
    if (!doc.contains(key)) throw InputError(source, 0, 0, std::string("missing field \"") + key + "\"");
  }
  if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned()) {
    throw InputError(source, 0, 0, "\"rows\" and \"cols\" must be non-negative integers");
  }
  const auto rows = doc["rows"].get<std::size_t>();
  const auto cols = doc["cols"].get<std::size_t>();
  const json& data = doc["data"];
  if (!data.is_array() || data.size() != rows) {
    throw InputError(source, 0, 0,
                     "\"data\" has " + std::to_string(data.is_array() ? data.size() : 0) + " rows, expected " +
                         std::to_string(rows));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    const std::string rp = "/data/" + std::to_string(i);
    if (!row.is_array() || row.size() != cols) {
      throw InputError(source, 0, 0, rp + " has " + std::to_string(row.is_array() ? row.size() : 0) +
                                         " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const json& v = row[j];
      const std::string ep = rp + "/" + std::to_string(j);
      Complex z;
      if (v.is_array()) {
        if (v.size() != 2) throw InputError(source, 0, 0, "expected [re, im] at " + ep);
        z = {finite_number(v[0], source, ep + "/0"), finite_number(v[1], source, ep + "/1")};
      } else {
        z = finite_number(v, source, ep);
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
    }
  }
  return m;
}

ComplexMatrix parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::vector<double> row;
    std::size_t f = 0;
    while (true) {
      std::size_t comma = line.find(',', f);
      if (comma == std::string_view::npos) comma = line.size();
      std::size_t a = f, b = comma;
      while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
      while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t')) --b;
      const char* first = line.data() + a;
      if (*first == '+' && a < b) ++first;
      double x = 0.0;
      const auto r = std::from_chars(first, line.data() + b, x);
      if (a == b || r.ec != std::errc() || r.ptr != line.data() + b || !std::isfinite(x)) {
        throw InputError(source, line_no, a + 1,
                         "invalid number '" + std::string(line.substr(a, b - a)) + "'");
      }
      row.push_back(x);
      if (comma == line.size()) break;
      f = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(source, line_no, 1,
                       "row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source, 1, 1, "empty matrix file");
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace

InputError::InputError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(where(source, line, column) + ": " + message), line_(line), column_(column) {}

ComplexMatrix parse_matrix(std::string_view text, const std::string& source) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InputError(source, 1, 1, "empty matrix file");
  if (text[first] == '{' || text[first] == '[') return parse_json(text, source);
  return parse_csv(text, source);
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str(), path.string());
}

}  // namespace dkit::cli
