#include <algorithm>
#include <deque>

#include "dynplanar/decomp.hpp"

namespace dp {

namespace {

bool has(const VertexSet& vs, Vertex v) { return std::binary_search(vs.begin(), vs.end(), v); }

int position(const std::vector<Vertex>& cyc, Vertex v) {
  auto it = std::find(cyc.begin(), cyc.end(), v);
  return it == cyc.end() ? -1 : static_cast<int>(it - cyc.begin());
}

// True if the distinct vertices of `seq` (consecutive repeats and a closing repeat collapsed)
// occur around `face` in this cyclic order, in either orientation.
bool in_cyclic_order(const std::vector<Vertex>& face, std::vector<Vertex> seq) {
  std::vector<Vertex> dedup;
  for (Vertex v : seq)
    if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
  while (dedup.size() > 1 && dedup.back() == dedup.front()) dedup.pop_back();
  if (dedup.size() < 3) return false;
  std::vector<int> pos;
  for (Vertex v : dedup) {
    int p = position(face, v);
    if (p < 0) return false;
    pos.push_back(p);
  }
  {
    std::vector<int> s = pos;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  }
  const int m = static_cast<int>(face.size());
  for (int dir : {1, -1}) {
    bool ok = true;
    int last = 0;
    for (std::size_t i = 1; i < pos.size() && ok; ++i) {
      int off = ((pos[i] - pos[0]) * dir % m + m) % m;
      ok = off > last;
      last = off;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::optional<CoherentPath> coherent_path(const DecompositionState& state, const TriComponent& c1,
                                          const TriComponent& c2, Vertex a1, Vertex a2) {
  if (!has(c1.vertices, a1) || !has(c2.vertices, a2)) return std::nullopt;
  for (std::size_t b = 0; b < state.blocks.size(); ++b) {
    const auto& tri = state.blocks[b].tri;
    if (!tri) continue;
    int i1 = tri->component_index(c1.vertices), i2 = tri->component_index(c2.vertices);
    if (i1 < 0 || i2 < 0) continue;
    if (a1 != a2 && !state.graph.has_edge(a1, a2)) {
      Graph g2 = state.graph;
      g2.add_edge(a1, a2);
      if (!is_planar(g2)) return std::nullopt;
    }
    auto adj = tri->adjacency();
    std::vector<int> prev(adj.size(), -2);
    std::deque<int> q{i1};
    prev[static_cast<std::size_t>(i1)] = -1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : adj[static_cast<std::size_t>(u)])
        if (prev[static_cast<std::size_t>(v)] == -2) {
          prev[static_cast<std::size_t>(v)] = u;
          q.push_back(v);
        }
    }
    CoherentPath out;
    out.block = static_cast<int>(b);
    out.a1 = a1;
    out.a2 = a2;
    for (int u = i2; u >= 0; u = prev[static_cast<std::size_t>(u)]) out.nodes.push_back(u);
    std::reverse(out.nodes.begin(), out.nodes.end());
    return out;
  }
  return std::nullopt;
}

Graph merged_component_graph(const DecompositionState& state, const CoherentPath& path) {
  DecompositionState after = state;
  if (!state.graph.has_edge(path.a1, path.a2)) {
    ChangeEvent e{ChangeEvent::Kind::insert, Edge(path.a1, path.a2)};
    after = update_decomposition(state, e, classify_change(state, e));
  }
  int bi = after.block_containing(path.a1, path.a2);
  if (bi < 0 || !after.blocks[static_cast<std::size_t>(bi)].tri) throw NotCoherent("anchors not in a common block");
  const TriTree& tri = *after.blocks[static_cast<std::size_t>(bi)].tri;
  auto both = tri.components_with(path.a1, path.a2);
  if (both.empty()) throw NotCoherent("anchors not in a common component");
  int pick = both.front();
  for (int c : both)
    if (!tri.components[static_cast<std::size_t>(c)].cycle) pick = c;
  return tri.component_graph(after.graph, pick);
}

bool common_face_after_insert(const DecompositionState& state, const CoherentPath& path, const std::vector<Vertex>& s) {
  if (path.nodes.empty()) throw NotCoherent("empty path");
  Graph merged = merged_component_graph(state, path);
  for (Vertex v : s)
    if (merged.degree(v) == 0) throw std::invalid_argument("query vertex not on the merged component");
  if (s.size() <= 1) return true;
  if (!is_3connected(merged)) return true;  // a cycle: both faces carry every vertex
  Embedding emb = embed_3connected(merged);
  return std::any_of(emb.faces.begin(), emb.faces.end(), [&](const CombFace& f) {
    return std::all_of(s.begin(), s.end(), [&](Vertex v) { return f.contains(v); });
  });
}

int tree_distance(const std::vector<std::vector<int>>& tree, int x, int y) {
  const int n = static_cast<int>(tree.size());
  if (x < 0 || y < 0 || x >= n || y >= n) throw DifferentTrees("node id out of range");
  std::vector<int> dist(tree.size(), -1);
  std::deque<int> q{x};
  dist[static_cast<std::size_t>(x)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (u == y) return dist[static_cast<std::size_t>(u)];
    for (int v : tree[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
  }
  throw DifferentTrees("nodes lie in different trees");
}

int cycle_distance(const std::vector<Vertex>& cycle, Vertex s1, Vertex s2, Vertex s3, Vertex u, Vertex v) {
  if (s1 == s2 || s2 == s3 || s1 == s3) throw AmbiguousOrientation("orientation triple must be distinct");
  int p1 = position(cycle, s1), p2 = position(cycle, s2), p3 = position(cycle, s3);
  int pu = position(cycle, u), pv = position(cycle, v);
  if (p1 < 0 || p2 < 0 || p3 < 0 || pu < 0 || pv < 0) throw NotOnCycle("vertex not on the cycle");
  const int m = static_cast<int>(cycle.size());
  auto fwd = [m](int a, int b) { return ((b - a) % m + m) % m; };
  bool forward = fwd(p1, p2) < fwd(p1, p3);
  return forward ? fwd(pu, pv) : fwd(pv, pu);
}

DiskGraph disk_graph(const Graph& c, const CombFace& f1, const CombFace& f2) {
  Embedding emb = embed_3connected(c, f1);
  auto same = [](const CombFace& a, const CombFace& b) { return a.same_face_as(b); };
  if (same(f1, f2)) throw NotAFacePair("faces coincide");
  if (std::none_of(emb.faces.begin(), emb.faces.end(), [&](const CombFace& f) { return same(f, f2); }))
    throw NotAFacePair("second face is not a face of the embedding");

  std::vector<const CombFace*> others;
  for (const auto& f : emb.faces)
    if (!same(f, f1) && !same(f, f2)) others.push_back(&f);

  std::vector<std::pair<Vertex, Vertex>> cand;
  for (Vertex a : f1.cycle)
    for (Vertex b : f2.cycle) {
      // Vertices on both faces are the ends of the deleted edge; they never separate.
      if (a == b || f1.contains(b) || f2.contains(a)) continue;
      bool shared = std::any_of(others.begin(), others.end(), [&](const CombFace* f) { return f->contains(a) && f->contains(b); });
      if (shared) cand.emplace_back(a, b);
    }

  DiskGraph out;
  for (const auto& [a, b] : cand) {
    bool pruned = false;
    for (const auto& [a2, b2] : cand) {
      if (a2 == a || b2 == b) continue;
      for (const CombFace* f : others)
        if (in_cyclic_order(f->cycle, {a, a2, b, b2})) {
          pruned = true;
          break;
        }
      if (pruned) break;
    }
    if (!pruned) out.nodes.emplace_back(a, b);
  }

  // Order along f1, ties along reversed f2. Both walks start at a vertex the faces share (the
  // end of the deleted edge whose f1 successor is off f2), so the cycle does not depend on where
  // the face lists start; faces sharing nothing are cut at the list starts.
  std::vector<Vertex> walk1 = f1.cycle;
  std::vector<Vertex> walk2(f2.cycle.rbegin(), f2.cycle.rend());
  for (std::size_t i = 0; i < walk1.size(); ++i) {
    const Vertex s = walk1[i];
    if (!f2.contains(s) || f2.contains(walk1[(i + 1) % walk1.size()])) continue;
    std::rotate(walk1.begin(), walk1.begin() + static_cast<std::ptrdiff_t>(i), walk1.end());
    std::rotate(walk2.begin(), std::find(walk2.begin(), walk2.end(), s), walk2.end());
    break;
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [&](const auto& x, const auto& y) {
    const int ax = position(walk1, x.first), ay = position(walk1, y.first);
    if (ax != ay) return ax < ay;
    return position(walk2, x.second) < position(walk2, y.second);
  });
  const int d = static_cast<int>(out.nodes.size());
  for (int i = 0; i < d; ++i) out.successor.push_back((i + 1) % d);
  return out;
}

TriUnfurl predict_unfurl_tri(const Graph& c, Edge e) {
  if (!c.has_edge(e.lo, e.hi)) throw std::invalid_argument("edge not in component");
  Graph minus = c;
  minus.remove_edge(e.lo, e.hi);
  if (is_3connected(minus)) throw Still3Connected("component stays 3-connected");
  Embedding emb = embed_3connected(c);
  auto at = emb.faces_with_edge(e.lo, e.hi);
  if (at.size() != 2) throw std::logic_error("edge not on two faces");
  // f1 walks from u away from v (so v comes last); f2 is consistently oriented with f1.
  auto orient = [&](const CombFace& f, Vertex first, Vertex last) {
    std::vector<Vertex> cyc = f.cycle;
    auto i = std::find(cyc.begin(), cyc.end(), first) - cyc.begin();
    std::rotate(cyc.begin(), cyc.begin() + i, cyc.end());
    if (cyc[1] == last) std::reverse(cyc.begin() + 1, cyc.end());
    return CombFace{cyc};
  };
  const Vertex u = e.lo, v = e.hi;
  CombFace f1 = orient(emb.faces[static_cast<std::size_t>(at[0])], u, v);
  CombFace f2 = orient(emb.faces[static_cast<std::size_t>(at[1])], u, v).reversed();
  DiskGraph disk = disk_graph(c, f1, f2);
  TriUnfurl out;
  for (const auto& [a, b] : disk.nodes) out.pairs.emplace_back(a, b);
  out.path_length = 2 * static_cast<int>(out.pairs.size());
  return out;
}

BCUnfurl predict_unfurl_bc(const Graph& b, Edge e) {
  if (!b.has_edge(e.lo, e.hi)) throw std::invalid_argument("edge not in block");
  Graph minus = b;
  minus.remove_edge(e.lo, e.hi);
  if (is_biconnected(minus) && minus.active_vertices().size() == b.active_vertices().size())
    throw StillBiconnected("block stays biconnected");
  TriTree tri = build_tri_tree(b);
  for (int ci : tri.components_with(e.lo, e.hi)) {
    if (!tri.components[static_cast<std::size_t>(ci)].cycle) continue;
    auto order = cycle_order(tri.component_graph(b, ci));
    auto i = std::find(order.begin(), order.end(), e.lo) - order.begin();
    std::rotate(order.begin(), order.begin() + i, order.end());
    if (order[1] == e.hi) std::reverse(order.begin() + 1, order.end());
    BCUnfurl out;
    out.cuts.assign(order.begin() + 1, order.end() - 1);
    out.path_length = 2 * static_cast<int>(order.size()) - 4;
    return out;
  }
  throw std::logic_error("bridge-creating edge outside any cycle component");
}

}  // namespace dp
