#pragma once

// Linear systems over Z/n via a Howell-style echelon form.

#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

namespace mfb {

inline long mod_norm(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline long mod_mul(long a, long b, long n) {
  return static_cast<long>((static_cast<__int128>(a) * b) % n);
}

/// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<long, long, long> extended_gcd(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo n; a must be a unit.
inline long mod_inverse(long a, long n) {
  auto [g, s, t] = extended_gcd(mod_norm(a, n), n);
  (void)t;
  return g == 1 ? mod_norm(s, n) : 0;
}

/// One solution of A x = b over Z/n (free variables set to 0), or nullopt
/// when the system is inconsistent. A is row-major, b has one entry per row.
inline std::optional<std::vector<long>> solve_mod(const std::vector<std::vector<long>>& a, const std::vector<long>& b,
                                                  long n) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  if (n == 1) return std::vector<long>(cols, 0);

  // augmented rows, rhs in the last slot
  std::vector<std::vector<long>> m;
  m.reserve(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<long> row(cols + 1);
    for (std::size_t c = 0; c < cols; ++c) row[c] = mod_norm(a[r][c], n);
    row[cols] = mod_norm(b[r], n);
    m.push_back(std::move(row));
  }

  auto combine = [&](std::vector<long>& x, std::vector<long>& y, long sx, long sy, long tx, long ty) {
    // (x, y) <- (sx x + sy y, tx x + ty y)
    for (std::size_t c = 0; c <= cols; ++c) {
      const long nx = mod_norm(mod_mul(sx, x[c], n) + mod_mul(sy, y[c], n), n);
      const long ny = mod_norm(mod_mul(tx, x[c], n) + mod_mul(ty, y[c], n), n);
      x[c] = nx;
      y[c] = ny;
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (m[r][c] == 0) {
        std::swap(m[r], m[i]);
        continue;
      }
      const long x = m[r][c], y = m[i][c];
      auto [g, s, t] = extended_gcd(x, y);
      // unimodular over Z: det [[s, t], [y/g, -x/g]] = -1
      combine(m[r], m[i], s, t, y / g, -(x / g));
    }
    if (m[r][c] == 0) continue;
    pivots.emplace_back(r, c);
    const long annihilator = n / std::gcd(m[r][c], n);
    if (annihilator != n) {
      std::vector<long> extra(cols + 1);
      bool nonzero = false;
      for (std::size_t k = 0; k <= cols; ++k) {
        extra[k] = mod_mul(annihilator, m[r][k], n);
        nonzero = nonzero || extra[k] != 0;
      }
      if (nonzero) m.push_back(std::move(extra));
    }
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i) {
    bool zero_lhs = true;
    for (std::size_t c = 0; c < cols; ++c) zero_lhs = zero_lhs && m[i][c] == 0;
    if (zero_lhs && m[i][cols] != 0) return std::nullopt;
  }

  std::vector<long> x(cols, 0);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [row, col] = *it;
    long rhs = m[row][cols];
    for (std::size_t c = col + 1; c < cols; ++c) rhs = mod_norm(rhs - mod_mul(m[row][c], x[c], n), n);
    const long g = m[row][col];
    const long h = std::gcd(g, n);
    if (rhs % h != 0) return std::nullopt;
    const long reduced = n / h;
    x[col] = mod_norm(mod_mul(rhs / h, mod_inverse(g / h, reduced), reduced), reduced);
  }
  return x;
}

}  // namespace mfb
