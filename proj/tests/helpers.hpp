#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "dynplanar/decomp.hpp"
#include "dynplanar/graph.hpp"

namespace dptest {

using dp::Edge;
using dp::Graph;
using dp::Vertex;

inline Graph make(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline Graph cycle(int n, int offset = 0, int universe = -1) {
  Graph g(universe < 0 ? n + offset : universe);
  for (int i = 0; i < n; ++i) g.add_edge(offset + i, offset + (i + 1) % n);
  return g;
}

inline Graph k4(int offset = 0, int universe = -1) {
  Graph g(universe < 0 ? 4 + offset : universe);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge(offset + i, offset + j);
  return g;
}

// Triangles 1-2-3 and 4-5-6 joined by 1-4, 2-5, 3-6 (vertex 0 unused).
inline Graph prism() {
  return make(7, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {1, 4}, {2, 5}, {3, 6}});
}

inline Graph cube() {
  return make(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

// Random 3-connected planar graph on exactly n >= 4 vertices (vertices [0, n) of a universe of `universe`).
inline Graph random_3connected(std::mt19937_64& rng, int n, int universe = -1, double thin = 0.5) {
  if (universe < 0) universe = n;
  Graph g = k4(0, universe);
  for (int v = 4; v < n; ++v) {
    auto emb = dp::embed_3connected(g);
    const auto& f = emb.faces[rng() % emb.faces.size()].cycle;
    // Attach to three consecutive face vertices (faces are triangles here).
    for (int k = 0; k < 3; ++k) g.add_edge(v, f[static_cast<std::size_t>(k)]);
  }
  // Flips diversify the stacked triangulation.
  for (int round = 0; round < 3 * n; ++round) {
    auto emb = dp::embed_3connected(g);
    auto edges = g.edges();
    Edge e = edges[rng() % edges.size()];
    auto at = emb.faces_with_edge(e.lo, e.hi);
    if (at.size() != 2) continue;
    Vertex c = -1, d = -1;
    for (Vertex v : emb.faces[static_cast<std::size_t>(at[0])].cycle)
      if (!e.contains(v)) c = v;
    for (Vertex v : emb.faces[static_cast<std::size_t>(at[1])].cycle)
      if (!e.contains(v)) d = v;
    if (c < 0 || d < 0 || c == d || g.has_edge(c, d)) continue;
    Graph h = g;
    h.remove_edge(e.lo, e.hi);
    h.add_edge(c, d);
    if (dp::is_3connected(h)) g = h;
  }
  // Thin out edges while staying 3-connected.
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (const Edge& e : edges) {
    if (coin(rng) > thin) continue;
    Graph h = g;
    h.remove_edge(e.lo, e.hi);
    if (dp::is_3connected(h)) g = h;
  }
  return g;
}

// Random planar graph with up to `m` insertion attempts.
inline Graph random_planar(std::mt19937_64& rng, int n, int attempts) {
  Graph g(n);
  for (int i = 0; i < attempts; ++i) {
    Vertex a = static_cast<Vertex>(rng() % static_cast<unsigned>(n)), b = static_cast<Vertex>(rng() % static_cast<unsigned>(n));
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(a, b);
    if (!dp::is_planar(g)) g.remove_edge(a, b);
  }
  return g;
}

}  // namespace dptest
