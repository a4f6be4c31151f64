#pragma once

// Named arrangements: generic, pencil, near-pencil, MacLane and explicit
// concurrency lists.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfb/arrangement.hpp"

namespace mfb {

inline LineConfiguration generic(int n) { return LineConfiguration{n, {}}; }

inline LineConfiguration pencil(int n) {
  if (n < 3) return generic(n);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return LineConfiguration{n, {all}};
}

inline LineConfiguration near_pencil(int n) {
  if (n < 4) return generic(n);
  std::vector<int> most(n - 1);
  for (int i = 0; i < n - 1; ++i) most[i] = i + 1;
  return LineConfiguration{n, {most}};
}

inline LineConfiguration with_concurrencies(int n, std::vector<std::vector<int>> flats) {
  LineConfiguration config{n, std::move(flats)};
  require_valid(config);
  return config;
}

namespace detail {

// Depth-first search for an (8_3) configuration: 8 triples on 8 lines, each line
// in exactly three triples, each pair of lines in at most one triple. Triples
// are tried in lexicographic order, so the first hit is reproducible.
inline bool search_83(std::array<int, 9>& degree, std::array<std::array<bool, 9>, 9>& used,
                      std::vector<std::vector<int>>& chosen) {
  int line = 0;
  for (int i = 1; i <= 8; ++i) {
    if (degree[i] < 3) {
      line = i;
      break;
    }
  }
  if (line == 0) return chosen.size() == 8;
  for (int b = line + 1; b <= 8; ++b) {
    if (degree[b] >= 3 || used[line][b]) continue;
    for (int c = b + 1; c <= 8; ++c) {
      if (degree[c] >= 3 || used[line][c] || used[b][c]) continue;
      used[line][b] = used[line][c] = used[b][c] = true;
      ++degree[line], ++degree[b], ++degree[c];
      chosen.push_back({line, b, c});
      if (search_83(degree, used, chosen)) return true;
      chosen.pop_back();
      --degree[line], --degree[b], --degree[c];
      used[line][b] = used[line][c] = used[b][c] = false;
    }
  }
  return false;
}

}  // namespace detail

/// Runs the exhaustive search every call; `maclane()` caches its result.
inline LineConfiguration search_maclane() {
  std::array<int, 9> degree{};
  std::array<std::array<bool, 9>, 9> used{};
  std::vector<std::vector<int>> chosen;
  if (!detail::search_83(degree, used, chosen))
    throw Error(ErrorKind::NoSuchCatalogEntry, "no (8_3) configuration found");
  return LineConfiguration{8, chosen};
}

inline const LineConfiguration& maclane() {
  static const LineConfiguration cached = search_maclane();
  return cached;
}

/// Parses "generic:8", "pencil:8", "near_pencil:8", "maclane" or
/// "with_concurrencies:8:1,2,3/4,5,6".
inline LineConfiguration catalog(std::string_view spec) {
  auto fail = [&]() -> LineConfiguration {
    throw Error(ErrorKind::NoSuchCatalogEntry, "unknown catalog entry '" + std::string(spec) + "'");
  };
  std::vector<std::string> parts;
  std::string current;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);

  auto parse_n = [&](const std::string& s) -> int {
    try {
      std::size_t used = 0;
      int n = std::stoi(s, &used);
      if (used == s.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    fail();
    return 0;
  };

  const std::string& name = parts[0];
  if (name == "maclane" && parts.size() == 1) return maclane();
  if (name == "generic" && parts.size() == 2) return generic(parse_n(parts[1]));
  if (name == "pencil" && parts.size() == 2) return pencil(parse_n(parts[1]));
  if ((name == "near_pencil" || name == "near-pencil") && parts.size() == 2) return near_pencil(parse_n(parts[1]));
  if (name == "with_concurrencies" && (parts.size() == 2 || parts.size() == 3)) {
    const int n = parse_n(parts[1]);
    std::vector<std::vector<int>> flats;
    if (parts.size() == 3 && !parts[2].empty()) {
      std::vector<int> flat;
      std::string number;
      auto flush_number = [&] {
        if (number.empty()) fail();
        flat.push_back(parse_n(number));
        number.clear();
      };
      for (char ch : parts[2] + "/") {
        if (ch == ',') {
          flush_number();
        } else if (ch == '/') {
          flush_number();
          flats.push_back(std::move(flat));
          flat.clear();
        } else {
          number += ch;
        }
      }
    }
    return with_concurrencies(n, std::move(flats));
  }
  return fail();
}

}  // namespace mfb
