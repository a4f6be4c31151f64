#pragma once

// Finite group presentations: words, relators, the text exchange format,
// abelianization, and a bounded Tietze simplification pass.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mfb/error.hpp"
#include "mfb/smith.hpp"

namespace mfb {

/// A letter is +(g+1) for generator g and -(g+1) for its inverse.
using Letter = int;
using Word = std::vector<Letter>;

inline Letter letter(std::size_t gen, int sign = 1) {
  const int id = static_cast<int>(gen) + 1;
  return sign < 0 ? -id : id;
}
inline std::size_t generator_of(Letter l) { return static_cast<std::size_t>(std::abs(l) - 1); }
inline int sign_of(Letter l) { return l < 0 ? -1 : 1; }

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

inline Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline Word power(std::size_t gen, long exponent) {
  Word out;
  const Letter l = letter(gen, exponent < 0 ? -1 : 1);
  for (long i = 0; i < std::labs(exponent); ++i) out.push_back(l);
  return out;
}

/// a b a^-1 b^-1
inline Word commutator(const Word& a, const Word& b) { return concat({a, b, inverse(a), inverse(b)}); }

inline void free_reduce(Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  w = std::move(out);
}

/// Free reduction followed by cancelling inverse pairs across the ends.
inline void cyclic_reduce(Word& w) {
  free_reduce(w);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) ++lo, --hi;
  w = Word(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
}

enum class GenKind { LineFiber, PointFiber, Boundary, Stable, Other };

inline std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::LineFiber: return "line-fiber";
    case GenKind::PointFiber: return "point-fiber";
    case GenKind::Boundary: return "boundary";
    case GenKind::Stable: return "stable";
    case GenKind::Other: return "other";
  }
  return "other";
}

/// Kind implied by the labelling used for boundary-manifold presentations.
inline GenKind infer_kind(std::string_view label) {
  auto numeric_tail = [&](std::size_t from) {
    return label.size() > from && std::all_of(label.begin() + static_cast<long>(from), label.end(),
                                              [](char c) { return c >= '0' && c <= '9'; });
  };
  if (label.starts_with("d_")) return GenKind::Boundary;
  if (label.starts_with("x") && numeric_tail(1)) return GenKind::LineFiber;
  if (label.starts_with("z") && numeric_tail(1)) return GenKind::PointFiber;
  if (label.starts_with("y") && numeric_tail(1)) return GenKind::Stable;
  return GenKind::Other;
}

struct Generator {
  std::string label;
  GenKind kind = GenKind::Other;

  friend bool operator==(const Generator&, const Generator&) = default;
};

struct GroupPresentation {
  std::vector<Generator> generators;
  std::vector<Word> relators;

  std::size_t add_generator(std::string label, GenKind kind = GenKind::Other) {
    generators.push_back(Generator{std::move(label), kind});
    return generators.size() - 1;
  }
  void add_relator(Word w) { relators.push_back(std::move(w)); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t g = 0; g < generators.size(); ++g)
      if (generators[g].label == label) return g;
    return std::nullopt;
  }

  std::size_t count(GenKind kind) const {
    return static_cast<std::size_t>(std::count_if(generators.begin(), generators.end(),
                                                   [&](const Generator& g) { return g.kind == kind; }));
  }

  std::size_t total_relator_length() const {
    std::size_t len = 0;
    for (const auto& r : relators) len += r.size();
    return len;
  }

  /// Every letter references a declared generator.
  bool well_formed() const {
    for (const auto& r : relators)
      for (Letter l : r)
        if (l == 0 || generator_of(l) >= generators.size()) return false;
    return true;
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Exponent-sum matrix: one row per relator, one column per generator.
inline SparseIntMatrix exponent_matrix(const GroupPresentation& p) {
  SparseIntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    std::map<std::size_t, long> sums;
    for (Letter l : p.relators[r]) sums[generator_of(l)] += sign_of(l);
    for (const auto& [g, s] : sums)
      if (s != 0) m.add(r, g, BigInt(s));
  }
  return m;
}

/// Abelianization via Smith normal form.
inline AbelianGroupDesc h1(const GroupPresentation& p) { return cokernel(exponent_matrix(p)); }

// ---------------------------------------------------------------------------
// Text format: `gen <label>` lines, then `rel <word>` lines where a word is a
// space-separated list of `label^1` / `label^-1`.

inline std::string write_presentation(const GroupPresentation& p) {
  std::ostringstream os;
  for (const auto& g : p.generators) os << "gen " << g.label << '\n';
  for (const auto& r : p.relators) {
    os << "rel";
    for (Letter l : r) os << ' ' << p.generators[generator_of(l)].label << '^' << sign_of(l);
    os << '\n';
  }
  return os.str();
}

inline GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p;
  std::unordered_map<std::string, std::size_t> index;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool seen_rel = false;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "presentation line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream tokens(raw);
    std::string directive;
    if (!(tokens >> directive)) continue;
    if (directive == "gen") {
      if (seen_rel) fail("'gen' after 'rel'");
      std::string label, extra;
      if (!(tokens >> label)) fail("'gen' needs a label");
      if (tokens >> extra) fail("trailing token '" + extra + "'");
      if (index.count(label)) fail("duplicate generator '" + label + "'");
      index[label] = p.add_generator(label, infer_kind(label));
    } else if (directive == "rel") {
      seen_rel = true;
      Word w;
      std::string token;
      while (tokens >> token) {
        const auto caret = token.rfind('^');
        const std::string label = caret == std::string::npos ? token : token.substr(0, caret);
        long exponent = 1;
        if (caret != std::string::npos) {
          try {
            std::size_t used = 0;
            exponent = std::stol(token.substr(caret + 1), &used);
            if (used != token.size() - caret - 1) fail("bad exponent in '" + token + "'");
          } catch (const std::invalid_argument&) {
            fail("bad exponent in '" + token + "'");
          }
        }
        auto it = index.find(label);
        if (it == index.end()) fail("undeclared generator '" + label + "'");
        const Word piece = power(it->second, exponent);
        w.insert(w.end(), piece.begin(), piece.end());
      }
      p.add_relator(std::move(w));
    } else {
      fail("unknown directive '" + directive + "'");
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Tietze simplification.

struct TietzeOptions {
  /// Only relators at most this long are used to eliminate a generator.
  std::size_t max_relator_length = 2;
  /// Generators of these kinds are never eliminated.
  std::vector<GenKind> protected_kinds;
};

struct TietzeResult {
  GroupPresentation presentation;
  /// old generator index -> new index, or -1 if eliminated.
  std::vector<long> new_index;
};

/// Free/cyclic reduction, removal of trivial and repeated relators, then
/// repeated elimination of a generator occurring exactly once in a short
/// relator. The result presents an isomorphic group.
inline TietzeResult simplify(const GroupPresentation& input, const TietzeOptions& options = {}) {
  const std::size_t gens = input.generators.size();
  std::vector<Word> rels = input.relators;
  std::vector<char> alive_rel(rels.size(), 1);
  std::vector<char> eliminated(gens, 0);
  // occurrences[g] = relator ids that may mention g (superset)
  std::vector<std::vector<std::size_t>> occurrences(gens);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    cyclic_reduce(rels[r]);
    if (rels[r].empty()) alive_rel[r] = 0;
    for (Letter l : rels[r]) occurrences[generator_of(l)].push_back(r);
  }
  auto is_protected = [&](std::size_t g) {
    return std::find(options.protected_kinds.begin(), options.protected_kinds.end(), input.generators[g].kind) !=
           options.protected_kinds.end();
  };

  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (!alive_rel[r] || rels[r].size() > options.max_relator_length) continue;
      const Word& rel = rels[r];
      // eliminable generator occurring once; prefer the highest index
      std::map<std::size_t, int> counts;
      for (Letter l : rel) ++counts[generator_of(l)];
      std::optional<std::size_t> victim;
      for (const auto& [g, c] : counts)
        if (c == 1 && !is_protected(g)) victim = g;
      if (!victim) continue;

      // rotate so the victim leads: g^e w = 1
      const auto pos = static_cast<long>(std::find_if(rel.begin(), rel.end(), [&](Letter l) {
                                           return generator_of(l) == *victim;
                                         }) - rel.begin());
      Word rotated(rel.begin() + pos, rel.end());
      rotated.insert(rotated.end(), rel.begin(), rel.begin() + pos);
      const int e = sign_of(rotated.front());
      const Word rest(rotated.begin() + 1, rotated.end());
      const Word image = e > 0 ? inverse(rest) : rest;  // value of g
      const Word image_inv = inverse(image);

      alive_rel[r] = 0;
      eliminated[*victim] = 1;
      for (std::size_t other : occurrences[*victim]) {
        if (!alive_rel[other]) continue;
        Word& target = rels[other];
        if (std::none_of(target.begin(), target.end(), [&](Letter l) { return generator_of(l) == *victim; }))
          continue;
        Word next;
        for (Letter l : target) {
          if (generator_of(l) != *victim) {
            next.push_back(l);
          } else {
            const Word& piece = sign_of(l) > 0 ? image : image_inv;
            next.insert(next.end(), piece.begin(), piece.end());
          }
        }
        cyclic_reduce(next);
        for (Letter l : next) occurrences[generator_of(l)].push_back(other);
        target = std::move(next);
        if (target.empty()) alive_rel[other] = 0;
      }
      occurrences[*victim].clear();
      progress = true;
    }
  }

  TietzeResult result;
  result.new_index.assign(gens, -1);
  for (std::size_t g = 0; g < gens; ++g) {
    if (eliminated[g]) continue;
    result.new_index[g] = static_cast<long>(result.presentation.generators.size());
    result.presentation.generators.push_back(input.generators[g]);
  }
  std::vector<Word> seen;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    if (!alive_rel[r]) continue;
    Word w;
    w.reserve(rels[r].size());
    for (Letter l : rels[r]) w.push_back(letter(static_cast<std::size_t>(result.new_index[generator_of(l)]), sign_of(l)));
    seen.push_back(std::move(w));
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  result.presentation.relators = std::move(seen);
  return result;
}

}  // namespace mfb
