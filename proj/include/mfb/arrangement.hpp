#pragma once

// Combinatorial line arrangements in the projective plane (central rank-3
// arrangements in C^3) and the invariants of their intersection poset.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mfb/error.hpp"

namespace mfb {

/// n lines indexed 1..n plus the multiple points (flats of multiplicity >= 3).
/// Pairs of lines not covered by a listed flat meet in an implicit double point.
struct LineConfiguration {
  int n = 0;
  std::vector<std::vector<int>> flats;

  friend bool operator==(const LineConfiguration&, const LineConfiguration&) = default;
};

struct Violation {
  ErrorKind kind;
  std::string message;
  // 0-based position of the offending flat in the input list, if any
  std::optional<std::size_t> flat;
  // DuplicatePair payload; flats are 0-based positions in the input list.
  int i = 0;
  int j = 0;
  std::size_t flat_a = 0;
  std::size_t flat_b = 0;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? ErrorKind::Parse : violations.front().kind, join(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
      if (!out.empty()) out += "; ";
      out += v.message;
    }
    return out;
  }

  std::vector<Violation> violations_;
};

inline ValidationResult validate(const LineConfiguration& config) {
  ValidationResult result;
  auto report = [&](ErrorKind kind, std::string msg, std::optional<std::size_t> flat = std::nullopt) {
    result.violations.push_back(Violation{kind, std::move(msg), flat});
  };

  if (config.n < 1) report(ErrorKind::BadIndex, "line count must be at least 1, got " + std::to_string(config.n));

  std::set<std::vector<int>> seen;
  // pair -> first flat containing it
  std::map<std::pair<int, int>, std::size_t> owner;

  for (std::size_t f = 0; f < config.flats.size(); ++f) {
    const auto& flat = config.flats[f];
    std::vector<int> sorted = flat;
    std::sort(sorted.begin(), sorted.end());
    const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    if (repeated) report(ErrorKind::BadIndex, "flat #" + std::to_string(f + 1) + " repeats a line", f);
    if (sorted.size() < 3) {
      report(ErrorKind::FlatTooSmall,
             "flat #" + std::to_string(f + 1) + " has " + std::to_string(sorted.size()) + " distinct lines (need >= 3)", f);
    }
    bool in_range = true;
    for (int line : sorted) {
      if (line < 1 || line > config.n) {
        report(ErrorKind::BadIndex, "flat #" + std::to_string(f + 1) + " references line " + std::to_string(line) +
                                        " outside 1.." + std::to_string(config.n), f);
        in_range = false;
      }
    }
    if (!seen.insert(sorted).second) {
      report(ErrorKind::DuplicateFlat, "flat #" + std::to_string(f + 1) + " is listed twice", f);
      continue;
    }
    if (!in_range) continue;
    for (std::size_t a = 0; a < sorted.size(); ++a) {
      for (std::size_t b = a + 1; b < sorted.size(); ++b) {
        auto [it, fresh] = owner.emplace(std::pair{sorted[a], sorted[b]}, f);
        if (fresh) continue;
        Violation v{ErrorKind::DuplicatePair,
                    "pair {" + std::to_string(sorted[a]) + "," + std::to_string(sorted[b]) + "} lies in flats #" +
                        std::to_string(it->second + 1) + " and #" + std::to_string(f + 1), f};
        v.i = sorted[a];
        v.j = sorted[b];
        v.flat_a = it->second;
        v.flat_b = f;
        result.violations.push_back(std::move(v));
      }
    }
  }
  return result;
}

inline const LineConfiguration& require_valid(const LineConfiguration& config) {
  auto result = validate(config);
  if (!result.ok()) throw ValidationError(std::move(result.violations));
  return config;
}

/// A codimension-two flat: the lines through one point of the projective arrangement.
struct Flat2 {
  std::vector<int> lines;  // sorted, 1-based

  int multiplicity() const noexcept { return static_cast<int>(lines.size()); }
  int mobius() const noexcept { return multiplicity() - 1; }
  bool contains(int line) const { return std::binary_search(lines.begin(), lines.end(), line); }

  friend bool operator==(const Flat2&, const Flat2&) = default;
};

/// All of L_2: the listed multiple points plus every implicit double point, in
/// lexicographic order of their sorted line lists.
inline std::vector<Flat2> l2_flats(const LineConfiguration& config) {
  std::vector<Flat2> out;
  std::vector<std::vector<char>> covered(config.n + 1, std::vector<char>(config.n + 1, 0));
  for (const auto& flat : config.flats) {
    Flat2 f{flat};
    std::sort(f.lines.begin(), f.lines.end());
    for (std::size_t a = 0; a < f.lines.size(); ++a)
      for (std::size_t b = a + 1; b < f.lines.size(); ++b) covered[f.lines[a]][f.lines[b]] = 1;
    out.push_back(std::move(f));
  }
  for (int i = 1; i <= config.n; ++i)
    for (int j = i + 1; j <= config.n; ++j)
      if (!covered[i][j]) out.push_back(Flat2{{i, j}});
  std::sort(out.begin(), out.end(), [](const Flat2& a, const Flat2& b) { return a.lines < b.lines; });
  return out;
}

inline long binomial2(long k) { return k * (k - 1) / 2; }

struct BettiProfile {
  std::array<long, 4> b_M{};  // complement M in C^3
  std::array<long, 3> b_U{};  // projectivized complement U
  long chi_U = 0;
  std::vector<long> charpoly;  // charpoly[k] = coefficient of t^k, degree 3

  /// chi(A, t) evaluated at an integer.
  long charpoly_at(long t) const {
    long acc = 0;
    for (auto it = charpoly.rbegin(); it != charpoly.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

/// Mobius data over the full rank-3 poset: ambient, the n hyperplanes, L_2 and
/// the origin. b_k(M) = (-1)^k sum over L_k of mu, and M ~ U x C^* gives b(U).
inline BettiProfile char_poly_and_betti(const LineConfiguration& config) {
  const auto flats = l2_flats(config);
  const long mu_ambient = 1;
  const long mu_lines = -1;  // each hyperplane
  long mu_l2 = 0;
  for (const auto& f : flats) mu_l2 += f.mobius();
  const long mu_origin = -(mu_ambient + config.n * mu_lines + mu_l2);

  BettiProfile p;
  // dim X: ambient 3, lines 2, L_2 flats 1, origin 0
  p.charpoly = {mu_origin, mu_l2, config.n * mu_lines, mu_ambient};
  p.b_M = {mu_ambient, -config.n * mu_lines, mu_l2, -mu_origin};
  p.b_U[0] = p.b_M[0];
  p.b_U[1] = p.b_M[1] - p.b_U[0];
  p.b_U[2] = p.b_M[2] - p.b_U[1];
  p.chi_U = 1 - p.b_U[1] + p.b_U[2];
  return p;
}

inline void require_nondegenerate(const LineConfiguration& config) {
  if (config.n <= 2)
    throw Error(ErrorKind::DegenerateArrangement,
                "Milnor fiber boundary needs at least 3 lines, got " + std::to_string(config.n));
}

/// sum over X in L_2 of 1 + (|A_X| - 2) gcd(|A_X|, n).
inline long b1_milnor_boundary(const LineConfiguration& config) {
  require_nondegenerate(config);
  long total = 0;
  for (const auto& f : l2_flats(config)) {
    const long k = f.multiplicity();
    total += 1 + (k - 2) * std::gcd(k, static_cast<long>(config.n));
  }
  return total;
}

/// (|A_X| - 2)(gcd(|A_X|, n) - 1) = 0 for every X in L_2.
inline bool assumption_star(const LineConfiguration& config) {
  for (const auto& flat : config.flats) {
    const int k = static_cast<int>(flat.size());
    if (k != 2 && std::gcd(k, config.n) != 1) return false;
  }
  return true;
}

struct MultiplicityTuple {
  int n = 0;
  std::vector<long> counts;  // counts[k - 3] = n_k for k = 3..n
  long doubles = 0;

  long at(int k) const {
    if (k == 2) return doubles;
    if (k < 3 || k > n) return 0;
    return counts[k - 3];
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
    os << ')';
    return os.str();
  }

  friend bool operator==(const MultiplicityTuple&, const MultiplicityTuple&) = default;
};

inline MultiplicityTuple multiplicity_tuple(const LineConfiguration& config) {
  MultiplicityTuple t;
  t.n = config.n;
  t.counts.assign(config.n >= 3 ? config.n - 2 : 0, 0);
  for (const auto& f : l2_flats(config)) {
    if (f.multiplicity() == 2)
      ++t.doubles;
    else
      ++t.counts[f.multiplicity() - 3];
  }
  return t;
}

/// Number of L_2 flats through each line (index 0 unused).
inline std::vector<int> points_per_line(const LineConfiguration& config, const std::vector<Flat2>& flats) {
  std::vector<int> r(config.n + 1, 0);
  for (const auto& f : flats)
    for (int line : f.lines) ++r[line];
  return r;
}

}  // namespace mfb
