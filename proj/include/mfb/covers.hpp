#pragma once

// Finite cyclic covers of presented groups (Reidemeister-Schreier), their
// first homology, and the tower of double covers attached to a Z/2^m
// character.

#include <future>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "mfb/arrangement.hpp"
#include "mfb/boundary.hpp"
#include "mfb/os_algebra.hpp"
#include "mfb/presentation.hpp"
#include "mfb/smith.hpp"

namespace mfb {

namespace detail {

/// Coset representatives for ker(G -> Z/d) as a prefix-closed transversal.
/// Returns tree[(c, g)] = true when T(c) g is itself the representative
/// T(c + ch(g)); those Schreier generators are trivial.
struct Transversal {
  long d = 1;
  std::vector<std::vector<char>> tree;  // [coset][generator]
};

inline Transversal schreier_transversal(const GroupPresentation& p, const CharacterMap& ch) {
  const long d = ch.modulus;
  Transversal t{d, std::vector<std::vector<char>>(static_cast<std::size_t>(d), std::vector<char>(p.generators.size(), 0))};

  // A single generator of unit value gives the transversal t^0, ..., t^{d-1};
  // line fibers are preferred, then lower indices.
  std::optional<std::size_t> unit;
  for (int pass = 0; pass < 2 && !unit; ++pass)
    for (std::size_t g = 0; g < p.generators.size() && !unit; ++g)
      if ((pass == 1 || p.generators[g].kind == GenKind::LineFiber) && std::gcd(ch.values[g], d) == 1) unit = g;
  if (unit) {
    const long u = ch.values[*unit];
    // walk t^0, t^1, ...; the step out of t^{d-1} wraps and is not a tree edge
    long c = 0;
    for (long step = 0; step + 1 < d; ++step) {
      t.tree[static_cast<std::size_t>(c)][*unit] = 1;
      c = mod_norm(c + u, d);
    }
    return t;
  }

  // breadth-first search over positive letters
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  std::queue<long> queue;
  queue.push(0);
  seen[0] = 1;
  while (!queue.empty()) {
    const long c = queue.front();
    queue.pop();
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      const long next = mod_norm(c + ch.values[g], d);
      if (seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = 1;
      t.tree[static_cast<std::size_t>(c)][g] = 1;
      queue.push(next);
    }
  }
  return t;
}

}  // namespace detail

/// Presentation of ker(ch mod d). Generators s_{c,g} = T(c) g T(c + ch(g))^-1
/// labelled "<g>@<c>", minus the d - 1 that are trivial by construction;
/// relators are the rewrites of T(c) R T(c)^-1 for every relator R and coset c.
inline GroupPresentation reidemeister_schreier(const GroupPresentation& p, const CharacterMap& ch, long d) {
  if (ch.values.size() != p.generators.size())
    throw Error(ErrorKind::DimensionMismatch, "character does not match the presentation");
  const CharacterMap reduced = ch.reduce(d);
  if (!reduced.surjective()) throw Error(ErrorKind::NotSurjectiveModD, "character is not onto Z/" + std::to_string(d));

  const auto transversal = detail::schreier_transversal(p, reduced);
  const std::size_t gens = p.generators.size();
  GroupPresentation out;
  std::vector<std::vector<long>> index(static_cast<std::size_t>(d), std::vector<long>(gens, -1));
  for (long c = 0; c < d; ++c)
    for (std::size_t g = 0; g < gens; ++g)
      if (!transversal.tree[static_cast<std::size_t>(c)][g])
        index[static_cast<std::size_t>(c)][g] = static_cast<long>(
            out.add_generator(p.generators[g].label + "@" + std::to_string(c), GenKind::Other));

  for (long start = 0; start < d; ++start) {
    for (const auto& rel : p.relators) {
      Word w;
      long c = start;
      for (Letter l : rel) {
        const std::size_t g = generator_of(l);
        if (sign_of(l) > 0) {
          if (const long s = index[static_cast<std::size_t>(c)][g]; s >= 0) w.push_back(letter(static_cast<std::size_t>(s)));
          c = mod_norm(c + reduced.values[g], d);
        } else {
          c = mod_norm(c - reduced.values[g], d);
          if (const long s = index[static_cast<std::size_t>(c)][g]; s >= 0)
            w.push_back(letter(static_cast<std::size_t>(s), -1));
        }
      }
      free_reduce(w);
      out.add_relator(std::move(w));
    }
  }
  return out;
}

/// H_1 of the d-fold cyclic cover determined by ch mod d.
inline AbelianGroupDesc h1_cover(const GroupPresentation& p, const CharacterMap& ch, long d) {
  return h1(reidemeister_schreier(p, ch, d));
}

struct TowerLevel {
  int k = 0;
  long degree = 1;
  AbelianGroupDesc h1;
};

/// H_1 along the tower of double covers X^{w_0} <- X^{w_1} <- ... <- X^{w_m},
/// where X^{w_k} is the 2^k-fold cover.
struct TowerStats {
  std::vector<TowerLevel> levels;

  int m() const { return static_cast<int>(levels.size()) - 1; }
  long b1(int k) const { return static_cast<long>(levels.at(static_cast<std::size_t>(k)).h1.free_rank); }
  long b1bar(int k) const { return static_cast<long>(levels.at(static_cast<std::size_t>(k)).h1.mod2_betti()); }
  long tau(int k) const { return static_cast<long>(levels.at(static_cast<std::size_t>(k)).h1.even_torsion()); }
  /// defined for k < m
  long alpha(int k) const { return b1bar(k + 1) - b1(k); }
  long rho(int k) const { return b1(k + 1) - b1(k); }

  /// The mod-2 Betti number never drops going up the tower.
  bool mod2_monotone() const {
    for (int k = 0; k < m(); ++k)
      if (b1bar(k + 1) < b1bar(k)) return false;
    return true;
  }
};

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

/// Levels k = 0..m computed concurrently; 2^m must divide the modulus, which
/// must itself be a power of two.
inline TowerStats tower_stats(const GroupPresentation& p, const CharacterMap& ch, int m) {
  if (!is_power_of_two(ch.modulus))
    throw Error(ErrorKind::ModulusNotPowerOfTwo, "modulus " + std::to_string(ch.modulus) + " is not a power of two");
  if (m < 0 || m > 62 || ch.modulus % (1L << m) != 0)
    throw Error(ErrorKind::ModulusNotPowerOfTwo, "2^" + std::to_string(m) + " does not divide " + std::to_string(ch.modulus));
  std::vector<std::future<AbelianGroupDesc>> jobs;
  for (int k = 0; k <= m; ++k)
    jobs.push_back(std::async(std::launch::async, [&p, &ch, k] { return h1_cover(p, ch, 1L << k); }));
  TowerStats stats;
  for (int k = 0; k <= m; ++k) stats.levels.push_back(TowerLevel{k, 1L << k, jobs[static_cast<std::size_t>(k)].get()});
  return stats;
}

/// Lower and upper bounds on the even torsion of H_1 of the Milnor fiber
/// boundary for n = 2^m lines under assumption (*).
struct MainTheoremRecord {
  bool applicable = false;
  std::string reason;  // why not applicable
  int n = 0;
  int m = -1;  // log2 n, or -1
  AbelianGroupDesc h1_milnor;
  std::size_t tau2 = 0;
  long chi_U = 0;
  std::optional<std::size_t> alpha0;
  bool lower_ok = false;  // tau2 >= chi_U
  bool upper_ok = false;  // tau2 <= (2^m - 1) chi_U
  bool cor37_ok = false;  // tau2 >= alpha0 >= chi_U
};

inline MainTheoremRecord main_theorem_check(const LineConfiguration& config) {
  MainTheoremRecord r;
  r.n = config.n;
  r.chi_U = char_poly_and_betti(config).chi_U;
  const auto model = boundary_model(config);
  r.h1_milnor = h1_cover(model.simplified.presentation, model.omega_simplified, config.n);
  r.tau2 = r.h1_milnor.even_torsion();
  if (config.n % 2 == 0) r.alpha0 = alpha0(config);
  if (is_power_of_two(config.n))
    for (r.m = 0; (1L << r.m) != config.n;) ++r.m;

  if (r.m < 0) {
    r.reason = "line count is not a power of two";
  } else if (!assumption_star(config)) {
    r.reason = "assumption (*) fails";
  } else {
    r.applicable = true;
  }
  const long tau2 = static_cast<long>(r.tau2);
  if (r.m >= 0) {
    r.lower_ok = tau2 >= r.chi_U;
    r.upper_ok = tau2 <= ((1L << r.m) - 1) * r.chi_U;
  }
  if (r.alpha0) r.cor37_ok = tau2 >= static_cast<long>(*r.alpha0) && static_cast<long>(*r.alpha0) >= r.chi_U;
  return r;
}

}  // namespace mfb
