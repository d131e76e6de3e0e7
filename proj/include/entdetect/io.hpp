// Copyright 2026 The entdetect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTDETECT_IO_HPP
#define ENTDETECT_IO_HPP

#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"

// Density-matrix files.
//
// JSON: {"dimA": n, "dimB": m, "re": [...], "im": [...]}, row-major,
// (n*m)^2 entries per array.
//
// CSV:
//   dimA,dimB
//   n,m
//   re_0,im_0,re_1,im_1,...
//   one line per matrix row, real and imaginary parts alternating
// In both formats, lines starting with '#' are comments.

namespace entdetect {

namespace detail {

inline std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

inline ComplexMatrix matrix_from_parts(int dim_a, int dim_b, const std::vector<double>& re,
                                       const std::vector<double>& im) {
  if (dim_a < 1 || dim_b < 1) throw ParseError("dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(dim_a) * dim_b;
  if (re.size() != n * n || im.size() != n * n) {
    throw ParseError("expected " + std::to_string(n * n) + " entries, got re=" + std::to_string(re.size()) +
                     " im=" + std::to_string(im.size()));
  }
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(re[i * n + j], im[i * n + j]);
  return m;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw ParseError("malformed number '" + s + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ParseError("malformed number '" + s + "'");
  }
}

/// Drops lines whose first non-blank character is '#'.
inline std::string strip_comments(const std::string& text) {
  std::stringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace detail

/// Entries as stored, before density-matrix validation.
struct RawMatrix {
  int dim_a = 0;
  int dim_b = 0;
  ComplexMatrix matrix;
};

inline std::string to_json(const DensityMatrix& rho) {
  const Eigen::Index n = rho.dim();
  std::ostringstream os;
  os << "{\"dimA\": " << rho.dim_a() << ", \"dimB\": " << rho.dim_b() << ", \"re\": [";
  for (Eigen::Index k = 0; k < n * n; ++k) os << (k ? ", " : "") << detail::format_double(rho.matrix()(k / n, k % n).real());
  os << "], \"im\": [";
  for (Eigen::Index k = 0; k < n * n; ++k) os << (k ? ", " : "") << detail::format_double(rho.matrix()(k / n, k % n).imag());
  os << "]}\n";
  return os.str();
}

inline std::string to_csv(const DensityMatrix& rho) {
  const Eigen::Index n = rho.dim();
  std::ostringstream os;
  os << "dimA,dimB\n" << rho.dim_a() << ',' << rho.dim_b() << '\n';
  for (Eigen::Index j = 0; j < n; ++j) os << (j ? "," : "") << "re_" << j << ",im_" << j;
  os << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      os << (j ? "," : "") << detail::format_double(rho.matrix()(i, j).real()) << ','
         << detail::format_double(rho.matrix()(i, j).imag());
    os << '\n';
  }
  return os.str();
}

inline RawMatrix parse_json_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::strip_comments(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    RawMatrix raw;
    raw.dim_a = doc.at("dimA").get<int>();
    raw.dim_b = doc.at("dimB").get<int>();
    raw.matrix = detail::matrix_from_parts(raw.dim_a, raw.dim_b, doc.at("re").get<std::vector<double>>(),
                                           doc.at("im").get<std::vector<double>>());
    return raw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad density-matrix document: ") + e.what());
  }
}

inline RawMatrix parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(detail::split_csv(line));
  }
  if (rows.size() < 3 || rows[0].size() != 2 || rows[0][0] != "dimA" || rows[0][1] != "dimB" || rows[1].size() != 2)
    throw ParseError("CSV must start with a 'dimA,dimB' header and a dimension row");
  RawMatrix raw;
  raw.dim_a = static_cast<int>(detail::parse_number(rows[1][0]));
  raw.dim_b = static_cast<int>(detail::parse_number(rows[1][1]));
  if (raw.dim_a < 1 || raw.dim_b < 1) throw ParseError("dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(raw.dim_a) * raw.dim_b;
  if (rows.size() != n + 3) throw ParseError("expected " + std::to_string(n) + " matrix rows");
  std::vector<double> re, im;
  for (std::size_t i = 3; i < rows.size(); ++i) {
    if (rows[i].size() != 2 * n) throw ParseError("matrix row " + std::to_string(i - 3) + " has wrong column count");
    for (std::size_t j = 0; j < n; ++j) {
      re.push_back(detail::parse_number(rows[i][2 * j]));
      im.push_back(detail::parse_number(rows[i][2 * j + 1]));
    }
  }
  raw.matrix = detail::matrix_from_parts(raw.dim_a, raw.dim_b, re, im);
  return raw;
}

/// Parses JSON when the first significant non-comment character is '{', CSV
/// otherwise.
inline RawMatrix parse_matrix(const std::string& text) {
  const std::string body = detail::strip_comments(text);
  auto pos = body.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) throw ParseError("empty input");
  return body[pos] == '{' ? parse_json_matrix(body) : parse_csv_matrix(body);
}

/// Parses and validates; throws ParseError or InvalidState.
inline DensityMatrix parse_density_matrix(const std::string& text) {
  RawMatrix raw = parse_matrix(text);
  return DensityMatrix(raw.dim_a, raw.dim_b, std::move(raw.matrix));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline DensityMatrix read_density_matrix(const std::string& path) { return parse_density_matrix(read_file(path)); }

}  // namespace entdetect

#endif  // ENTDETECT_IO_HPP
