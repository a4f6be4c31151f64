#pragma once

// The boundary manifold of a line arrangement as a graph manifold: the
// plumbing graph on the line-point incidence graph, a presentation of its
// fundamental group, and the Z/n character of the Milnor fiber boundary cover.

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "mfb/arrangement.hpp"
#include "mfb/modular.hpp"
#include "mfb/presentation.hpp"

namespace mfb {

enum class VertexKind { Line, Point };

struct PlumbingVertex {
  VertexKind kind;
  int id;       // 1-based line index, or 1-based position in l2_flats
  long weight;  // Euler number
  int genus = 0;
};

/// Edge between a line vertex and a point vertex.
struct PlumbingEdge {
  std::size_t line_vertex;
  std::size_t point_vertex;
};

/// Lines occupy vertices 0..n-1 and L_2 flats follow in `l2_flats` order.
/// All multiple points, double points included, are blown up, so a line
/// through r points has weight 1 - r and every point vertex has weight -1.
struct PlumbingGraph {
  std::vector<PlumbingVertex> vertices;
  std::vector<PlumbingEdge> edges;

  std::size_t line_count() const {
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(),
                                                   [](const auto& v) { return v.kind == VertexKind::Line; }));
  }

  std::size_t other_end(std::size_t edge, std::size_t v) const {
    return edges[edge].line_vertex == v ? edges[edge].point_vertex : edges[edge].line_vertex;
  }

  /// Incident edges of each vertex in ascending order of the neighbour.
  std::vector<std::vector<std::size_t>> incidence() const {
    std::vector<std::vector<std::size_t>> inc(vertices.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      inc[edges[e].line_vertex].push_back(e);
      inc[edges[e].point_vertex].push_back(e);
    }
    for (std::size_t v = 0; v < inc.size(); ++v)
      std::sort(inc[v].begin(), inc[v].end(),
                [&](std::size_t a, std::size_t b) { return other_end(a, v) < other_end(b, v); });
    return inc;
  }

  bool connected() const {
    if (vertices.empty()) return true;
    const auto inc = incidence();
    std::vector<char> seen(vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : inc[v]) {
        const std::size_t w = other_end(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertices.size();
  }

  /// First Betti number of the (connected) graph.
  long first_betti() const {
    return static_cast<long>(edges.size()) - static_cast<long>(vertices.size()) + 1;
  }
};

inline PlumbingGraph plumbing_graph(const LineConfiguration& config) {
  require_nondegenerate(config);
  const auto flats = l2_flats(config);
  const auto r = points_per_line(config, flats);
  PlumbingGraph g;
  for (int line = 1; line <= config.n; ++line)
    g.vertices.push_back(PlumbingVertex{VertexKind::Line, line, 1 - r[line]});
  for (std::size_t p = 0; p < flats.size(); ++p) {
    g.vertices.push_back(PlumbingVertex{VertexKind::Point, static_cast<int>(p + 1), -1});
    const std::size_t pv = static_cast<std::size_t>(config.n) + p;
    for (int line : flats[p].lines) g.edges.push_back(PlumbingEdge{static_cast<std::size_t>(line - 1), pv});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const PlumbingEdge& a, const PlumbingEdge& b) {
    return std::tie(a.line_vertex, a.point_vertex) < std::tie(b.line_vertex, b.point_vertex);
  });
  return g;
}

enum class SpanningTree { BreadthFirst, DepthFirst };

/// in_tree[e] for a spanning tree grown from vertex 0.
inline std::vector<char> spanning_tree(const PlumbingGraph& g, SpanningTree choice) {
  const auto inc = g.incidence();
  std::vector<char> in_tree(g.edges.size(), 0), seen(g.vertices.size(), 0);
  if (g.vertices.empty()) return in_tree;
  if (choice == SpanningTree::BreadthFirst) {
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (std::size_t e : inc[v]) {
        const std::size_t w = g.other_end(e, v);
        if (seen[w]) continue;
        seen[w] = 1;
        in_tree[e] = 1;
        queue.push(w);
      }
    }
  } else {
    // iterative DFS that always descends into the last unvisited neighbour
    std::vector<std::size_t> stack{0};
    std::vector<std::size_t> parent_edge(g.vertices.size(), g.edges.size());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      if (parent_edge[v] != g.edges.size()) in_tree[parent_edge[v]] = 1;
      for (std::size_t e : inc[v]) {
        const std::size_t w = g.other_end(e, v);
        if (!seen[w]) {
          parent_edge[w] = e;
          stack.push_back(w);
        }
      }
    }
  }
  return in_tree;
}

/// Presentation of pi_1 of the plumbed manifold.
///
/// Generators: a fiber per vertex (x<i> for line i, z<j> for point j), a
/// stable letter y<k> per edge outside the spanning tree, and a boundary curve
/// d_<v>_<w> per vertex-edge incidence. Relators, with the incident edges of v
/// in ascending order of neighbour:
///   [fiber_v, d_{v,e}]                   for every incident e
///   d_{v,e1} ... d_{v,ek} fiber_v^{-w_v}
///   d_{v,e} = fiber_w, d_{w,e} = fiber_v for tree edges
///   d_{v,e} = y fiber_w y^-1, y d_{w,e} y^-1 = fiber_v otherwise
/// where v is the line end of e.
inline GroupPresentation pi1_presentation(const PlumbingGraph& g,
                                          SpanningTree choice = SpanningTree::BreadthFirst) {
  GroupPresentation p;
  auto vertex_name = [&](std::size_t v) {
    const auto& vx = g.vertices[v];
    return std::string(vx.kind == VertexKind::Line ? "L" : "P") + std::to_string(vx.id);
  };

  std::vector<std::size_t> fiber(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vx = g.vertices[v];
    fiber[v] = vx.kind == VertexKind::Line ? p.add_generator("x" + std::to_string(vx.id), GenKind::LineFiber)
                                           : p.add_generator("z" + std::to_string(vx.id), GenKind::PointFiber);
  }
  const auto in_tree = spanning_tree(g, choice);
  std::vector<std::size_t> stable(g.edges.size(), 0);
  std::size_t stable_count = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!in_tree[e]) stable[e] = p.add_generator("y" + std::to_string(++stable_count), GenKind::Stable);

  // boundary[e][0] at the line end, boundary[e][1] at the point end
  std::vector<std::array<std::size_t, 2>> boundary(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [lv, pv] = g.edges[e];
    boundary[e][0] = p.add_generator("d_" + vertex_name(lv) + "_" + vertex_name(pv), GenKind::Boundary);
    boundary[e][1] = p.add_generator("d_" + vertex_name(pv) + "_" + vertex_name(lv), GenKind::Boundary);
  }
  auto boundary_at = [&](std::size_t e, std::size_t v) { return boundary[e][g.edges[e].line_vertex == v ? 0 : 1]; };

  const auto inc = g.incidence();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const Word fv = power(fiber[v], 1);
    Word product;
    for (std::size_t e : inc[v]) {
      const Word d = power(boundary_at(e, v), 1);
      p.add_relator(commutator(fv, d));
      product.insert(product.end(), d.begin(), d.end());
    }
    p.add_relator(concat({product, power(fiber[v], -g.vertices[v].weight)}));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [lv, pv] = g.edges[e];
    const Word d_line = power(boundary[e][0], 1), d_point = power(boundary[e][1], 1);
    const Word f_line = power(fiber[lv], 1), f_point = power(fiber[pv], 1);
    if (in_tree[e]) {
      p.add_relator(concat({d_line, inverse(f_point)}));
      p.add_relator(concat({d_point, inverse(f_line)}));
    } else {
      const Word y = power(stable[e], 1);
      p.add_relator(concat({d_line, y, inverse(f_point), inverse(y)}));
      p.add_relator(concat({y, d_point, inverse(y), inverse(f_line)}));
    }
  }
  return p;
}

/// Eliminates the boundary curves (and anything else reducible by relators
/// of length <= 4) while keeping every fiber and stable letter.
inline TietzeResult simplify_boundary(const GroupPresentation& p) {
  TietzeOptions options;
  options.max_relator_length = 4;
  options.protected_kinds = {GenKind::LineFiber, GenKind::PointFiber, GenKind::Stable};
  return simplify(p, options);
}

/// A homomorphism from a presented group to Z/modulus, by generator values.
struct CharacterMap {
  long modulus = 1;
  std::vector<long> values;

  long evaluate(const Word& w) const {
    long acc = 0;
    for (Letter l : w) acc += sign_of(l) * values[generator_of(l)];
    return mod_norm(acc, modulus);
  }

  bool respects(const GroupPresentation& p) const {
    if (values.size() != p.generators.size()) return false;
    return std::all_of(p.relators.begin(), p.relators.end(), [&](const Word& r) { return evaluate(r) == 0; });
  }

  bool surjective() const {
    long g = modulus;
    for (long v : values) g = std::gcd(g, v);
    return g == 1;
  }

  /// Composition with Z/modulus -> Z/d; d must divide the modulus.
  CharacterMap reduce(long d) const {
    if (d < 1 || modulus % d != 0)
      throw Error(ErrorKind::BadDivisor, std::to_string(d) + " does not divide " + std::to_string(modulus));
    CharacterMap out{d, values};
    for (auto& v : out.values) v = mod_norm(v, d);
    return out;
  }

  /// Restriction along a Tietze simplification.
  CharacterMap restrict_to(const TietzeResult& t) const {
    CharacterMap out{modulus, std::vector<long>(t.presentation.generators.size(), 0)};
    for (std::size_t g = 0; g < t.new_index.size(); ++g)
      if (t.new_index[g] >= 0) out.values[static_cast<std::size_t>(t.new_index[g])] = values[g];
    return out;
  }
};

/// Solves for the character sending every line fiber (meridian) to 1 and
/// every stable letter to 0; the remaining generator values are whatever the
/// relators force.
inline CharacterMap solve_character(const GroupPresentation& p, long n) {
  if (n < 1) throw Error(ErrorKind::BadDivisor, "modulus must be positive");
  const std::size_t gens = p.generators.size();
  std::vector<std::vector<long>> a;
  std::vector<long> b;
  for (const auto& rel : p.relators) {
    std::vector<long> row(gens, 0);
    for (Letter l : rel) row[generator_of(l)] += sign_of(l);
    a.push_back(std::move(row));
    b.push_back(0);
  }
  for (std::size_t g = 0; g < gens; ++g) {
    const GenKind kind = p.generators[g].kind;
    if (kind != GenKind::LineFiber && kind != GenKind::Stable) continue;
    std::vector<long> row(gens, 0);
    row[g] = 1;
    a.push_back(std::move(row));
    b.push_back(kind == GenKind::LineFiber ? 1 : 0);
  }
  auto solution = solve_mod(a, b, n);
  if (!solution) throw Error(ErrorKind::Infeasible, "no character with meridians -> 1 and cycles -> 0 mod " + std::to_string(n));
  CharacterMap ch{n, std::move(*solution)};
  if (!ch.surjective()) throw Error(ErrorKind::NotSurjective, "character is not onto Z/" + std::to_string(n));
  return ch;
}

/// Everything downstream needs about the boundary manifold of one arrangement.
struct BoundaryModel {
  PlumbingGraph graph;
  GroupPresentation presentation;
  TietzeResult simplified;
  CharacterMap omega;             // on `presentation`
  CharacterMap omega_simplified;  // on `simplified.presentation`
};

inline BoundaryModel boundary_model(const LineConfiguration& config,
                                    SpanningTree choice = SpanningTree::BreadthFirst) {
  BoundaryModel m;
  m.graph = plumbing_graph(config);
  m.presentation = pi1_presentation(m.graph, choice);
  m.simplified = simplify_boundary(m.presentation);
  m.omega = solve_character(m.presentation, config.n);
  m.omega_simplified = m.omega.restrict_to(m.simplified);
  return m;
}

}  // namespace mfb
