#pragma once

// The mod-2 cohomology ring A = H*(U; Z/2) of the projectivized complement,
// realized as the Orlik-Solomon algebra of a decone, its double
// D(A) = A + Hom(A, Z/2), and the Aomoto complexes of degree-one elements.

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "mfb/arrangement.hpp"
#include "mfb/gf2.hpp"

namespace mfb {

using gf2::BitMatrix;
using gf2::BitVector;

/// The affine arrangement left after sending `pivot` to infinity. Affine line
/// i (0-based) is original line `original[i]`.
struct DeconedConfiguration {
  int pivot = 0;
  std::size_t m = 0;
  std::vector<int> original;
  std::vector<std::vector<std::size_t>> affine_points;     // flats avoiding the pivot
  std::vector<std::vector<std::size_t>> parallel_classes;  // flats through the pivot, pivot removed

  /// Every pair of affine lines lies in exactly one point or one class.
  bool partitions_pairs() const {
    std::vector<std::vector<int>> hits(m, std::vector<int>(m, 0));
    auto mark = [&](const std::vector<std::size_t>& block) {
      for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a + 1; b < block.size(); ++b) ++hits[block[a]][block[b]];
    };
    for (const auto& p : affine_points) mark(p);
    for (const auto& c : parallel_classes) mark(c);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (hits[i][j] != 1) return false;
    return true;
  }
};

inline DeconedConfiguration decone(const LineConfiguration& config, int pivot) {
  require_nondegenerate(config);
  if (pivot < 1 || pivot > config.n)
    throw Error(ErrorKind::BadIndex, "pivot line " + std::to_string(pivot) + " outside 1.." + std::to_string(config.n));
  DeconedConfiguration d;
  d.pivot = pivot;
  d.m = static_cast<std::size_t>(config.n - 1);
  std::vector<std::size_t> affine_index(config.n + 1, 0);
  for (int line = 1; line <= config.n; ++line) {
    if (line == pivot) continue;
    affine_index[line] = d.original.size();
    d.original.push_back(line);
  }
  for (const auto& flat : l2_flats(config)) {
    std::vector<std::size_t> block;
    for (int line : flat.lines)
      if (line != pivot) block.push_back(affine_index[line]);
    std::sort(block.begin(), block.end());
    (flat.contains(pivot) ? d.parallel_classes : d.affine_points).push_back(std::move(block));
  }
  std::sort(d.affine_points.begin(), d.affine_points.end());
  std::sort(d.parallel_classes.begin(), d.parallel_classes.end());
  return d;
}

/// Graded algebra over Z/2 in degrees 0..2 with A^0 = Z/2, A^1 spanned by the
/// affine lines, and A^2 by no-broken-circuit pairs e_{i1} e_{ij} (i1 the
/// smallest line through each affine point).
class GradedAlgebraMod2 {
 public:
  GradedAlgebraMod2(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> basis2,
                    std::vector<BitVector> products)
      : m_(m), basis2_(std::move(basis2)), products_(std::move(products)) {}

  std::array<std::size_t, 3> dims() const { return {1, m_, basis2_.size()}; }
  std::size_t dim(int degree) const { return degree >= 0 && degree <= 2 ? dims()[static_cast<std::size_t>(degree)] : 0; }
  const std::vector<std::pair<std::size_t, std::size_t>>& basis2() const { return basis2_; }

  /// e_i e_j in A^2 coordinates.
  const BitVector& product(std::size_t i, std::size_t j) const { return products_[i * m_ + j]; }

  /// Product of homogeneous elements; degrees above 2 give an empty vector.
  BitVector multiply(int deg_a, const BitVector& a, int deg_b, const BitVector& b) const {
    check(deg_a, a);
    check(deg_b, b);
    const int deg = deg_a + deg_b;
    BitVector out(dim(deg));
    if (deg > 2) return out;
    if (deg_a == 0) return a.get(0) ? b : out;
    if (deg_b == 0) return b.get(0) ? a : out;
    // deg_a = deg_b = 1
    for (std::size_t i = 0; i < m_; ++i) {
      if (!a.get(i)) continue;
      for (std::size_t j = 0; j < m_; ++j)
        if (b.get(j)) out ^= product(i, j);
    }
    return out;
  }

  /// Dual action (a f)(x) = f(x a) for a in A^deg_a and f in Hom(A^deg_f, Z/2);
  /// the result lies in Hom(A^{deg_f - deg_a}, Z/2).
  BitVector act(int deg_a, const BitVector& a, int deg_f, const BitVector& f) const {
    check(deg_a, a);
    check(deg_f, f);
    const int deg = deg_f - deg_a;
    BitVector out(dim(deg));
    if (deg < 0) return out;
    for (std::size_t k = 0; k < dim(deg); ++k) {
      BitVector x(dim(deg));
      x.set(k);
      out.set(k, f.dot(multiply(deg, x, deg_a, a)));
    }
    return out;
  }

 private:
  void check(int degree, const BitVector& v) const {
    if (v.size() != dim(degree))
      throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(v.size()) +
                                                    " is not in degree " + std::to_string(degree));
  }

  std::size_t m_;
  std::vector<std::pair<std::size_t, std::size_t>> basis2_;
  std::vector<BitVector> products_;
};

/// Orlik-Solomon relations mod 2: e_i e_j = 0 for parallel lines, and for an
/// affine point i1 < ... < ik the straightening e_a e_b = e_{i1} e_a + e_{i1} e_b.
inline GradedAlgebraMod2 build_os2(const DeconedConfiguration& d) {
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (const auto& point : d.affine_points)
    for (std::size_t j = 1; j < point.size(); ++j) basis.emplace_back(point.front(), point[j]);
  const std::size_t dim2 = basis.size();
  auto basis_index = [&](std::size_t a, std::size_t b) {
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), std::pair{a, b}) - basis.begin());
  };

  std::vector<BitVector> products(d.m * d.m, BitVector(dim2));
  for (const auto& point : d.affine_points) {
    const std::size_t lead = point.front();
    for (std::size_t x = 0; x < point.size(); ++x) {
      for (std::size_t y = x + 1; y < point.size(); ++y) {
        const std::size_t a = point[x], b = point[y];
        BitVector v(dim2);
        if (a == lead) {
          v.set(basis_index(lead, b));
        } else {
          v.set(basis_index(lead, a));
          v.set(basis_index(lead, b));
        }
        products[a * d.m + b] = v;
        products[b * d.m + a] = v;
      }
    }
  }
  return GradedAlgebraMod2(d.m, std::move(basis), std::move(products));
}

/// Cup product of two degree-one classes.
inline BitVector cup(const BitVector& a, const BitVector& b, const GradedAlgebraMod2& alg) {
  return alg.multiply(1, a, 1, b);
}

/// Homogeneous element of D(A)^k = A^k + Hom(A^{3-k}, Z/2).
struct DoubleElement {
  int degree = 0;
  BitVector a;
  BitVector f;

  bool is_zero() const { return !a.any() && !f.any(); }
};

/// The double of a graded algebra concentrated in degrees 0..2; degree k of
/// the double is A^k + Hom(A^{3-k}, Z/2) for k = 0..3.
class DoubleAlgebraMod2 {
 public:
  explicit DoubleAlgebraMod2(GradedAlgebraMod2 base) : base_(std::move(base)) {}

  const GradedAlgebraMod2& base() const noexcept { return base_; }

  std::size_t dim(int k) const { return base_.dim(k) + base_.dim(3 - k); }
  std::array<std::size_t, 4> dims() const { return {dim(0), dim(1), dim(2), dim(3)}; }

  DoubleElement zero(int k) const { return DoubleElement{k, BitVector(base_.dim(k)), BitVector(base_.dim(3 - k))}; }

  DoubleElement basis(int k, std::size_t i) const {
    auto e = zero(k);
    if (i < e.a.size())
      e.a.set(i);
    else
      e.f.set(i - e.a.size());
    return e;
  }

  /// (a, f)(b, g) = (ab, ag + fb)
  DoubleElement multiply(const DoubleElement& x, const DoubleElement& y) const {
    const int k = x.degree + y.degree;
    if (k > 3) throw Error(ErrorKind::DimensionMismatch, "product above top degree");
    DoubleElement out = zero(k);
    if (k <= 2) out.a = base_.multiply(x.degree, x.a, y.degree, y.a);
    out.f = base_.act(x.degree, x.a, 3 - y.degree, y.f);
    out.f ^= base_.act(y.degree, y.a, 3 - x.degree, x.f);
    return out;
  }

  /// Coordinates: A part first, then the dual part.
  BitVector flatten(const DoubleElement& e) const {
    BitVector v(dim(e.degree));
    for (std::size_t i = 0; i < e.a.size(); ++i) v.set(i, e.a.get(i));
    for (std::size_t i = 0; i < e.f.size(); ++i) v.set(e.a.size() + i, e.f.get(i));
    return v;
  }

 private:
  GradedAlgebraMod2 base_;
};

inline DoubleAlgebraMod2 double_algebra(GradedAlgebraMod2 alg) { return DoubleAlgebraMod2(std::move(alg)); }

struct ResonanceResult {
  std::array<std::size_t, 3> h_A{};     // H^k(A, a), k = 0..2
  std::array<std::size_t, 3> h_Abar{};  // H^k(Abar, a): position k holds Hom(A^{2-k})
  std::array<std::size_t, 4> h_D{};     // H^k(D(A), (a, b)), k = 0..3
  std::size_t d = 0;                    // dim H^1(A, a)
  long beta = 0;                        // Euler characteristic 1 - dim A^1 + dim A^2
  bool pattern_ok = false;              // H^0(A,a) = 0 and dim H^2(A,a) = beta + d
  bool lower_bound_ok = false;          // dim H^1(D) >= beta + d

  /// Alternating sum along the long exact sequence
  /// H^0 D, H^0 A, H^0 Abar, H^1 D, ..., H^3 D; zero by exactness.
  long les_alternating_sum() const {
    std::vector<long> terms;
    for (std::size_t k = 0; k < 3; ++k) {
      terms.push_back(static_cast<long>(h_D[k]));
      terms.push_back(static_cast<long>(h_A[k]));
      terms.push_back(static_cast<long>(h_Abar[k]));
    }
    terms.push_back(static_cast<long>(h_D[3]));
    long sum = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) sum += (i % 2 ? -1 : 1) * terms[i];
    return sum;
  }
};

namespace detail {

template <class Map>
BitMatrix matrix_of(std::size_t source_dim, std::size_t target_dim, Map&& image_of_basis) {
  BitMatrix m(target_dim, source_dim);
  for (std::size_t j = 0; j < source_dim; ++j) {
    const BitVector img = image_of_basis(j);
    for (std::size_t i = 0; i < target_dim; ++i)
      if (img.get(i)) m.set(i, j);
  }
  return m;
}

/// Cohomology dimensions of 0 -> C^0 -> ... -> C^last -> 0 given the maps.
inline std::vector<std::size_t> cohomology_dims(const std::vector<std::size_t>& dims, const std::vector<BitMatrix>& maps) {
  std::vector<std::size_t> ranks;
  for (const auto& mp : maps) ranks.push_back(mp.rank());
  std::vector<std::size_t> h(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::size_t out = k < ranks.size() ? ranks[k] : 0;
    const std::size_t in = k > 0 ? ranks[k - 1] : 0;
    h[k] = dims[k] - out - in;
  }
  return h;
}

}  // namespace detail

/// Coboundaries of (D(A), (a, b)): maps D^k -> D^{k+1}, x -> x (a, b).
inline std::vector<BitMatrix> double_coboundaries(const DoubleAlgebraMod2& dbl, const DoubleElement& element) {
  std::vector<BitMatrix> maps;
  for (int k = 0; k < 3; ++k)
    maps.push_back(detail::matrix_of(dbl.dim(k), dbl.dim(k + 1), [&](std::size_t j) {
      return dbl.flatten(dbl.multiply(dbl.basis(k, j), element));
    }));
  return maps;
}

inline ResonanceResult resonance(const DoubleAlgebraMod2& dbl, const BitVector& a, const BitVector& b) {
  const auto& alg = dbl.base();
  if (a.size() != alg.dim(1) || b.size() != alg.dim(2))
    throw Error(ErrorKind::DimensionMismatch, "(a, b) must lie in A^1 + Hom(A^2)");
  if (!a.any()) throw Error(ErrorKind::ZeroFirstComponent, "first component of (a, b) is zero");

  ResonanceResult r;
  const DoubleElement element{1, a, b};
  auto unit = [](std::size_t size, std::size_t i) {
    BitVector v(size);
    v.set(i);
    return v;
  };

  // (A, a): A^0 -> A^1 -> A^2
  std::vector<BitMatrix> a_maps;
  for (int k = 0; k < 2; ++k)
    a_maps.push_back(detail::matrix_of(alg.dim(k), alg.dim(k + 1), [&](std::size_t j) {
      return alg.multiply(k, unit(alg.dim(k), j), 1, a);
    }));
  const auto hA = detail::cohomology_dims({alg.dim(0), alg.dim(1), alg.dim(2)}, a_maps);

  // (Abar, a): Hom(A^2) -> Hom(A^1) -> Hom(A^0), f -> f a
  std::vector<BitMatrix> abar_maps;
  for (int k = 0; k < 2; ++k) {
    const int src = 2 - k;
    abar_maps.push_back(detail::matrix_of(alg.dim(src), alg.dim(src - 1), [&](std::size_t j) {
      return alg.act(1, a, src, unit(alg.dim(src), j));
    }));
  }
  const auto hAbar = detail::cohomology_dims({alg.dim(2), alg.dim(1), alg.dim(0)}, abar_maps);

  const auto d_maps = double_coboundaries(dbl, element);
  const auto dd = dbl.dims();
  const auto hD = detail::cohomology_dims({dd[0], dd[1], dd[2], dd[3]}, d_maps);

  std::copy(hA.begin(), hA.end(), r.h_A.begin());
  std::copy(hAbar.begin(), hAbar.end(), r.h_Abar.begin());
  std::copy(hD.begin(), hD.end(), r.h_D.begin());
  r.d = r.h_A[1];
  r.beta = 1 - static_cast<long>(alg.dim(1)) + static_cast<long>(alg.dim(2));
  r.pattern_ok = r.h_A[0] == 0 && static_cast<long>(r.h_A[2]) == r.beta + static_cast<long>(r.d);
  r.lower_bound_ok = static_cast<long>(r.h_D[1]) >= r.beta + static_cast<long>(r.d);
  return r;
}

/// The class taking value 1 on every meridian: e_1 + ... + e_{n-1} in decone
/// coordinates. The pivot meridian is the sum of the others, so it also gets
/// n - 1 = 1 mod 2, which needs n even.
inline BitVector omega_bar_prime(const GradedAlgebraMod2& alg, int n) {
  if (n % 2 != 0) throw Error(ErrorKind::OddLineCount, "line count " + std::to_string(n) + " is odd");
  if (alg.dim(1) != static_cast<std::size_t>(n - 1))
    throw Error(ErrorKind::DimensionMismatch, "algebra has " + std::to_string(alg.dim(1)) + " generators, expected n - 1");
  BitVector v(alg.dim(1));
  for (std::size_t i = 0; i < v.size(); ++i) v.set(i);
  return v;
}

/// First Aomoto-Betti number of D(A) at (omega_bar', 0).
inline std::size_t alpha0(const LineConfiguration& config, int pivot = 0) {
  if (config.n % 2 != 0) throw Error(ErrorKind::OddLineCount, "line count " + std::to_string(config.n) + " is odd");
  const auto dbl = double_algebra(build_os2(decone(config, pivot ? pivot : config.n)));
  const auto a = omega_bar_prime(dbl.base(), config.n);
  return resonance(dbl, a, BitVector(dbl.base().dim(2))).h_D[1];
}

}  // namespace mfb
