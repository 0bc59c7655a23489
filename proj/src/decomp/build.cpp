#include <algorithm>
#include <deque>
#include <set>

#include "dynplanar/decomp.hpp"

namespace dp {

namespace {

// Connected pieces of g after deleting `removed`, restricted to `within`.
std::vector<VertexSet> pieces_without(const Graph& g, const VertexSet& within, Vertex r1, Vertex r2) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0), seen(in.size(), 0);
  for (Vertex v : within) in[static_cast<std::size_t>(v)] = 1;
  std::vector<VertexSet> out;
  for (Vertex s : within) {
    if (s == r1 || s == r2 || seen[static_cast<std::size_t>(s)]) continue;
    VertexSet piece;
    std::vector<Vertex> st{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!st.empty()) {
      Vertex u = st.back();
      st.pop_back();
      piece.push_back(u);
      for (Vertex v : g.neighbours(u))
        if (in[static_cast<std::size_t>(v)] && v != r1 && v != r2 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          st.push_back(v);
        }
    }
    std::sort(piece.begin(), piece.end());
    out.push_back(std::move(piece));
  }
  return out;
}

// Internally vertex-disjoint x-y paths, capped at `cap`, by unit-capacity max-flow on the split graph.
int disjoint_paths(const Graph& g, Vertex x, Vertex y, int cap) {
  const int n = g.order();
  // node 2v = v_in, 2v+1 = v_out
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> net(static_cast<std::size_t>(2 * n));
  auto add = [&](int a, int b, int c) {
    net[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(net[static_cast<std::size_t>(b)].size()), c});
    net[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(net[static_cast<std::size_t>(a)].size()) - 1, 0});
  };
  for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == x || v == y) ? cap : 1);
  for (const Edge& e : g.edges()) {
    add(2 * e.lo + 1, 2 * e.hi, 1);
    add(2 * e.hi + 1, 2 * e.lo, 1);
  }
  const int src = 2 * x + 1, dst = 2 * y;
  int flow = 0;
  while (flow < cap) {
    std::vector<std::pair<int, int>> prev(static_cast<std::size_t>(2 * n), {-1, -1});
    std::deque<int> q{src};
    prev[static_cast<std::size_t>(src)] = {src, -1};
    while (!q.empty() && prev[static_cast<std::size_t>(dst)].first < 0) {
      int u = q.front();
      q.pop_front();
      for (std::size_t i = 0; i < net[static_cast<std::size_t>(u)].size(); ++i) {
        const Arc& a = net[static_cast<std::size_t>(u)][i];
        if (a.cap > 0 && prev[static_cast<std::size_t>(a.to)].first < 0) {
          prev[static_cast<std::size_t>(a.to)] = {u, static_cast<int>(i)};
          q.push_back(a.to);
        }
      }
    }
    if (prev[static_cast<std::size_t>(dst)].first < 0) break;
    for (int v = dst; v != src;) {
      auto [u, i] = prev[static_cast<std::size_t>(v)];
      Arc& a = net[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
      a.cap -= 1;
      net[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

struct Piece {
  VertexSet vertices;
  Graph edges;
};

}  // namespace

BCTree build_bc_tree(const Graph& g) {
  DecompositionState s;
  s.graph = g;
  for (auto& b : biconnected_blocks(g)) s.blocks.push_back(Block{std::move(b), std::nullopt});
  return s.bc_forest();
}

TriTree build_tri_tree(const Graph& b) {
  TriTree t;
  const VertexSet active = b.active_vertices();
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      Vertex x = active[i], y = active[j];
      if (pieces_without(b, active, x, y).size() < 2) continue;
      if (disjoint_paths(b, x, y, 3) >= 3) t.pairs.emplace_back(x, y);
    }

  std::vector<Piece> work{{active, b}};
  while (!work.empty()) {
    Piece piece = std::move(work.back());
    work.pop_back();
    bool split = false;
    for (const Edge& p : t.pairs) {
      if (!std::binary_search(piece.vertices.begin(), piece.vertices.end(), p.lo) ||
          !std::binary_search(piece.vertices.begin(), piece.vertices.end(), p.hi))
        continue;
      auto parts = pieces_without(piece.edges, piece.vertices, p.lo, p.hi);
      if (parts.size() < 2) continue;
      for (auto& part : parts) {
        part.push_back(p.lo);
        part.push_back(p.hi);
        std::sort(part.begin(), part.end());
        Graph sub = piece.edges.restricted_to(part);
        if (!sub.has_edge(p.lo, p.hi)) sub.add_edge(p.lo, p.hi);
        work.push_back(Piece{std::move(part), std::move(sub)});
      }
      split = true;
      break;
    }
    if (!split)
      t.components.push_back(
          TriComponent{piece.vertices, piece.edges.size() == static_cast<int>(piece.vertices.size())});
  }
  t.normalize();
  return t;
}

DecompositionState build_decomposition(const Graph& g) {
  DecompositionState s;
  s.graph = g;
  for (auto& vs : biconnected_blocks(g)) {
    Block blk{std::move(vs), std::nullopt};
    if (blk.vertices.size() >= 3) blk.tri = build_tri_tree(g.restricted_to(blk.vertices));
    s.blocks.push_back(std::move(blk));
  }
  std::sort(s.blocks.begin(), s.blocks.end(), [](const Block& a, const Block& b) { return a.vertices < b.vertices; });
  return s;
}

}  // namespace dp
