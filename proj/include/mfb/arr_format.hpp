#pragma once

// The `.arr` text format:
//
//   # comment
//   n 8
//   flat 1 2 3
//   flat 4 5 6
//
// One directive per line, whitespace-separated, 1-based line indices.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "mfb/arrangement.hpp"

namespace mfb {

namespace detail {

inline std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

inline int parse_int(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    parse_fail(line_no, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) parse_fail(line_no, "expected an integer, got '" + token + "'");
  return value;
}

}  // namespace detail

/// Syntax only; call `validate` on the result (violations name flats by their
/// position among the `flat` directives). `flat_source_lines`, when given,
/// receives the 1-based text line of each flat.
inline LineConfiguration parse_arr(std::istream& in, std::vector<std::size_t>* flat_source_lines = nullptr) {
  LineConfiguration config;
  bool have_n = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream tokens(detail::strip_comment(raw));
    std::string directive;
    if (!(tokens >> directive)) continue;
    if (directive == "n") {
      if (have_n) detail::parse_fail(line_no, "duplicate 'n' directive");
      std::string value, extra;
      if (!(tokens >> value)) detail::parse_fail(line_no, "'n' needs a value");
      if (tokens >> extra) detail::parse_fail(line_no, "trailing token '" + extra + "'");
      config.n = detail::parse_int(value, line_no);
      have_n = true;
    } else if (directive == "flat") {
      if (!have_n) detail::parse_fail(line_no, "'flat' before 'n'");
      std::vector<int> flat;
      std::string token;
      while (tokens >> token) flat.push_back(detail::parse_int(token, line_no));
      config.flats.push_back(std::move(flat));
      if (flat_source_lines) flat_source_lines->push_back(line_no);
    } else {
      detail::parse_fail(line_no, "unknown directive '" + directive + "'");
    }
  }
  if (!have_n) detail::parse_fail(line_no, "missing 'n' directive");
  return config;
}

inline LineConfiguration parse_arr(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_arr(in);
}

inline LineConfiguration load_arr(const std::string& path, std::vector<std::size_t>* flat_source_lines = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_arr(in, flat_source_lines);
}

inline std::string write_arr(const LineConfiguration& config) {
  std::ostringstream os;
  os << "n " << config.n << '\n';
  for (const auto& flat : config.flats) {
    os << "flat";
    for (int line : flat) os << ' ' << line;
    os << '\n';
  }
  return os.str();
}

/// Parses and validates; violation messages are prefixed with the text line
/// of the offending flat.
inline LineConfiguration parse_and_validate(std::istream& in) {
  std::vector<std::size_t> lines;
  LineConfiguration config = parse_arr(in, &lines);
  auto result = validate(config);
  if (result.ok()) return config;
  for (auto& v : result.violations)
    if (v.flat && *v.flat < lines.size()) v.message = "line " + std::to_string(lines[*v.flat]) + ": " + v.message;
  throw ValidationError(std::move(result.violations));
}

inline LineConfiguration load_and_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_and_validate(in);
}

}  // namespace mfb
