#pragma once

#include <cinfrbf/interpolate.hpp>
#include <cinfrbf/point_set.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinfrbf {

namespace detail {

inline bool parse_double(std::string_view token, double& out) {
  // trim spaces
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

inline std::vector<std::string_view> split_commas(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Reads a CSV of numeric rows: comma separators, '.' decimal point, an
/// optional single header line (detected as the first line that fails to
/// parse as numbers). Blank lines are skipped. An empty file yields zero
/// rows.
inline std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<std::string_view> tokens;
  bool first_content_line = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == '\n')) sv.remove_suffix(1);
    if (sv.empty()) continue;
    detail::split_commas(sv, tokens);
    std::vector<double> row(tokens.size());
    bool ok = true;
    for (std::size_t k = 0; k < tokens.size() && ok; ++k) ok = detail::parse_double(tokens[k], row[k]);
    if (!ok) {
      if (first_content_line) {  // header
        first_content_line = false;
        continue;
      }
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": not a numeric row");
    }
    first_content_line = false;
    if (!rows.empty() && rows.front().size() != row.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

inline point_set read_points_csv(const std::string& path) {
  return point_set::from_rows(read_csv(path));
}

/// Values file: one numeric column.
inline std::vector<double> read_values_csv(const std::string& path) {
  std::vector<double> out;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 1) throw std::runtime_error(path + ": expected a single value column");
    out.push_back(row[0]);
  }
  return out;
}

inline void write_values_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (double v : values) out << detail::format_full(v) << "\n";
}

/// Full-precision structured text dump of a fitted model.
inline void write_model(std::ostream& out, const interpolant& model) {
  out << "cinfrbf-model 1\n";
  out << "kernel " << (model.kind == kernel_kind::cinf ? "cinf" : "wendland") << "\n";
  out << "alpha " << detail::format_full(model.params.alpha) << "\n";
  out << "delta " << detail::format_full(model.params.delta) << "\n";
  out << "dim " << model.centers.dim() << "\n";
  out << "count " << model.centers.size() << "\n";
  out << "centers\n";
  for (std::size_t i = 0; i < model.centers.size(); ++i) {
    const auto p = model.centers.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << detail::format_full(p[k]);
    out << "\n";
  }
  out << "coefficients\n";
  for (double c : model.coefficients) out << detail::format_full(c) << "\n";
}

inline void write_model(const std::string& path, const interpolant& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_model(out, model);
}

inline interpolant read_model(std::istream& in) {
  auto expect = [&](const std::string& tag) {
    std::string word;
    if (!(in >> word) || word != tag) throw std::runtime_error("model parse: expected '" + tag + "'");
  };
  expect("cinfrbf-model");
  int version = 0;
  in >> version;
  if (version != 1) throw std::runtime_error("model parse: unsupported version");
  expect("kernel");
  std::string kind_name;
  in >> kind_name;
  kernel_kind kind;
  if (kind_name == "cinf") kind = kernel_kind::cinf;
  else if (kind_name == "wendland") kind = kernel_kind::wendland;
  else throw std::runtime_error("model parse: unknown kernel '" + kind_name + "'");
  expect("alpha");
  double alpha = 0;
  in >> alpha;
  expect("delta");
  double delta = 0;
  in >> delta;
  expect("dim");
  int dim = 0;
  in >> dim;
  expect("count");
  std::size_t n = 0;
  in >> n;
  expect("centers");
  std::vector<double> coords(n * static_cast<std::size_t>(dim));
  for (double& c : coords)
    if (!(in >> c)) throw std::runtime_error("model parse: truncated centers");
  expect("coefficients");
  std::vector<double> coeffs(n);
  for (double& c : coeffs)
    if (!(in >> c)) throw std::runtime_error("model parse: truncated coefficients");
  interpolant model{point_set(dim, std::move(coords)), std::move(coeffs), kernel_params(alpha, delta),
                    kind};
  return model;
}

inline interpolant read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_model(in);
}

}  // namespace cinfrbf
