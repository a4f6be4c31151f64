#pragma once

// Published torsion of H_1 of the Milnor fiber boundary for eight lines,
// indexed by the multiplicity tuple (n_3, ..., n_8).

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfb/arrangement.hpp"
#include "mfb/smith.hpp"

namespace mfb {

struct Table1Row {
  std::array<int, 6> tuple;  // n_3..n_8
  std::string_view torsion;  // "0", "8^15", "2^2 8^10", ...
  long chi_U;                // as printed
  bool star;
  std::string_view remark;
};

inline constexpr std::array<Table1Row, 29> kTable1{{
    {{0, 0, 0, 0, 0, 1}, "0", 0, false, "Pencil case"},
    {{0, 0, 0, 0, 1, 0}, "0", 0, true, "Near-pencil case"},
    {{1, 0, 0, 1, 0, 0}, "4^4", 4, false, ""},
    {{0, 0, 0, 1, 0, 0}, "4^4 8", 5, false, ""},
    {{6, 1, 0, 0, 0, 0}, "2^2 8^4", 6, false, ""},
    {{3, 2, 0, 0, 0, 0}, "2^4 8^2", 6, false, ""},
    {{3, 0, 1, 0, 0, 0}, "8^6", 6, true, ""},
    {{0, 1, 1, 0, 0, 0}, "2^2 8^4", 6, false, ""},
    {{8, 0, 0, 0, 0, 0}, "8^7", 7, true, "MacLane arrangement"},
    {{5, 1, 0, 0, 0, 0}, "2^2 8^5", 7, false, ""},
    {{2, 2, 0, 0, 0, 0}, "2^4 8^3", 7, false, ""},
    {{2, 0, 1, 0, 0, 0}, "8^7", 7, true, ""},
    {{7, 0, 0, 0, 0, 0}, "8^8", 8, true, ""},
    {{4, 1, 0, 0, 0, 0}, "2^2 8^6", 8, false, ""},
    {{1, 2, 0, 0, 0, 0}, "2^4 8^4", 8, false, ""},
    {{1, 0, 1, 0, 0, 0}, "8^8", 8, true, ""},
    {{6, 0, 0, 0, 0, 0}, "8^9", 9, true, ""},
    {{3, 1, 0, 0, 0, 0}, "2^2 8^7", 9, false, ""},
    {{0, 2, 0, 0, 0, 0}, "2^4 8^5", 9, false, ""},
    {{0, 0, 1, 0, 0, 0}, "8^9", 9, true, ""},
    {{5, 0, 0, 0, 0, 0}, "8^10", 10, true, ""},
    {{2, 1, 0, 0, 0, 0}, "2^2 8^8", 10, false, ""},
    {{4, 0, 0, 0, 0, 0}, "8^11", 11, true, ""},
    {{1, 1, 0, 0, 0, 0}, "2^2 8^9", 11, false, ""},
    {{3, 0, 0, 0, 0, 0}, "8^12", 12, true, ""},
    {{0, 1, 0, 0, 0, 0}, "2^2 8^10", 12, false, ""},
    {{2, 0, 0, 0, 0, 0}, "8^13", 13, true, ""},
    {{1, 0, 0, 0, 0, 0}, "8^14", 14, true, ""},
    {{0, 0, 0, 0, 0, 0}, "8^15", 15, true, "Generic arrangement"},
}};

/// Parses the compact torsion notation "d^k d^k ..." ("0" for none) into
/// an ascending coefficient list.
inline std::vector<BigInt> parse_torsion(std::string_view text) {
  std::vector<BigInt> out;
  std::string s(text);
  std::size_t pos = 0;
  auto fail = [&] { throw Error(ErrorKind::Parse, "bad torsion spec '" + s + "'"); };
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '+' || s[pos] == '\t')) ++pos;
    if (pos == s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '+' && s[end] != '\t') ++end;
    const std::string token = s.substr(pos, end - pos);
    pos = end;
    if (token == "0") continue;
    const auto caret = token.find('^');
    try {
      std::size_t used = 0;
      const long order = std::stol(token.substr(0, caret), &used);
      if (used != (caret == std::string::npos ? token.size() : caret) || order < 2) fail();
      long count = 1;
      if (caret != std::string::npos) {
        count = std::stol(token.substr(caret + 1), &used);
        if (used != token.size() - caret - 1 || count < 0) fail();
      }
      for (long i = 0; i < count; ++i) out.emplace_back(order);
    } catch (const std::logic_error&) {
      fail();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// "d^k d^k" form of a torsion list, "0" when empty.
inline std::string format_torsion(const std::vector<BigInt>& torsion) {
  const auto counts = AbelianGroupDesc{0, torsion}.torsion_counts();
  if (counts.empty()) return "0";
  std::string out;
  for (const auto& [order, count] : counts) {
    if (!out.empty()) out += ' ';
    out += order.str();
    if (count > 1) out += "^" + std::to_string(count);
  }
  return out;
}

inline std::optional<Table1Row> table1_lookup(const MultiplicityTuple& t) {
  if (t.n != 8) return std::nullopt;
  for (const auto& row : kTable1) {
    bool same = true;
    for (int k = 3; k <= 8; ++k) same = same && row.tuple[static_cast<std::size_t>(k - 3)] == t.at(k);
    if (same) return row;
  }
  return std::nullopt;
}

}  // namespace mfb
