#include <algorithm>
#include <deque>
#include <map>

#include "dynplanar/decomp.hpp"

namespace dp {

namespace {

bool has(const VertexSet& vs, Vertex v) { return std::binary_search(vs.begin(), vs.end(), v); }

VertexSet sorted(VertexSet vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void erase_component(TriTree& t, const VertexSet& vs) {
  auto it = std::find_if(t.components.begin(), t.components.end(),
                         [&](const TriComponent& c) { return c.vertices == vs; });
  if (it != t.components.end()) t.components.erase(it);
}

void erase_pair(TriTree& t, Edge p) {
  auto it = std::find(t.pairs.begin(), t.pairs.end(), p);
  if (it != t.pairs.end()) t.pairs.erase(it);
}

std::vector<int> tree_path(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources,
                           const std::vector<char>& is_target) {
  std::vector<int> prev(adj.size(), -2);
  std::deque<int> q;
  for (int s : sources) {
    prev[static_cast<std::size_t>(s)] = -1;
    q.push_back(s);
  }
  int hit = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (is_target[static_cast<std::size_t>(u)]) {
      hit = u;
      break;
    }
    for (int v : adj[static_cast<std::size_t>(u)])
      if (prev[static_cast<std::size_t>(v)] == -2) {
        prev[static_cast<std::size_t>(v)] = u;
        q.push_back(v);
      }
  }
  std::vector<int> path;
  for (int u = hit; u >= 0; u = prev[static_cast<std::size_t>(u)]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

// Splits a cycle into arcs: removed edges are gaps, split vertices end one arc and start the next.
std::vector<VertexSet> cycle_arcs(const std::vector<Vertex>& order, const std::vector<Edge>& removed,
                                  const std::vector<Vertex>& split_at) {
  const std::size_t m = order.size();
  auto gap = [&](std::size_t i) {
    Edge e(order[i], order[(i + 1) % m]);
    return std::find(removed.begin(), removed.end(), e) != removed.end();
  };
  std::size_t start = 0;
  while (start < m && !gap(start)) ++start;
  start = (start + 1) % m;
  std::vector<VertexSet> arcs;
  std::vector<Vertex> cur;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t i = (start + step) % m;
    Vertex v = order[i];
    cur.push_back(v);
    bool split = std::find(split_at.begin(), split_at.end(), v) != split_at.end();
    if (split && cur.size() > 1) {
      arcs.push_back(cur);
      cur = {v};
    }
    if (gap(i)) {
      arcs.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) arcs.push_back(cur);
  return arcs;
}

class BlockUpdater {
 public:
  BlockUpdater(const Graph& g, TriTree& t) : g_(g), t_(t) {}

  void insert(Vertex x, Vertex y) {
    auto both = t_.components_with(x, y);
    if (!both.empty()) {
      if (t_.pair_index(Edge(x, y)) >= 0) return;
      const TriComponent c = t_.components[static_cast<std::size_t>(both.front())];
      if (!c.cycle) return;
      Graph cg = t_.component_graph(g_, both.front());
      if (cg.degree(x) == 2 && cg.degree(y) == 2 && cg.has_edge(x, y)) return;  // already consecutive
      if (cg.has_edge(x, y)) cg.remove_edge(x, y);
      auto order = cycle_order(cg);
      const auto m = order.size();
      auto ix = static_cast<std::size_t>(std::find(order.begin(), order.end(), x) - order.begin());
      auto iy = static_cast<std::size_t>(std::find(order.begin(), order.end(), y) - order.begin());
      if ((ix + 1) % m == iy || (iy + 1) % m == ix) return;
      VertexSet a, b;
      for (std::size_t k = ix;; k = (k + 1) % m) {
        a.push_back(order[k]);
        if (k == iy) break;
      }
      for (std::size_t k = iy;; k = (k + 1) % m) {
        b.push_back(order[k]);
        if (k == ix) break;
      }
      erase_component(t_, c.vertices);
      t_.components.push_back({sorted(a), true});
      t_.components.push_back({sorted(b), true});
      t_.pairs.emplace_back(x, y);
      t_.normalize();
      return;
    }
    merge_path(x, y);
  }

  void remove(Vertex x, Vertex y) {
    if (t_.pair_index(Edge(x, y)) >= 0) {
      normalize_pair(Edge(x, y));
      return;
    }
    auto both = t_.components_with(x, y);
    if (both.size() != 1 || t_.components[static_cast<std::size_t>(both.front())].cycle)
      throw std::logic_error("deletion does not sit in a single 3-connected component");
    Graph cg = t_.component_graph(g_, both.front());
    if (is_3connected(cg)) return;
    unfurl(t_.components[static_cast<std::size_t>(both.front())].vertices, cg);
  }

  void normalize_pair(Edge p) {
    if (t_.pair_index(p) < 0) return;
    auto around = t_.components_with(p.lo, p.hi);
    const bool real = g_.has_edge(p.lo, p.hi);
    if (around.size() >= 3) return;
    if (around.size() == 2) {
      const TriComponent c0 = t_.components[static_cast<std::size_t>(around[0])];
      const TriComponent c1 = t_.components[static_cast<std::size_t>(around[1])];
      if (real || !c0.cycle || !c1.cycle) return;
      erase_pair(t_, p);
      erase_component(t_, c0.vertices);
      erase_component(t_, c1.vertices);
      VertexSet merged = c0.vertices;
      merged.insert(merged.end(), c1.vertices.begin(), c1.vertices.end());
      t_.components.push_back({sorted(merged), true});
      t_.normalize();
      return;
    }
    erase_pair(t_, p);
    if (around.empty() || real) return;
    const TriComponent c = t_.components[static_cast<std::size_t>(around[0])];
    if (c.cycle) throw std::logic_error("cycle component lost a virtual edge");
    Graph cg = t_.component_graph(g_, t_.component_index(c.vertices));
    if (!is_3connected(cg)) unfurl(c.vertices, cg);
  }

 private:
  void unfurl(const VertexSet& r, const Graph& rgraph) {
    TriTree local = build_tri_tree(rgraph);
    erase_component(t_, r);
    for (const auto& c : local.components) t_.components.push_back(c);
    for (const auto& p : local.pairs) t_.pairs.push_back(p);
    t_.normalize();
    std::vector<Edge> touched;
    for (const Edge& p : t_.pairs)
      for (const auto& c : local.components)
        if (has(c.vertices, p.lo) && has(c.vertices, p.hi)) {
          touched.push_back(p);
          break;
        }
    for (const Edge& p : touched) normalize_pair(p);
  }

  void merge_path(Vertex x, Vertex y) {
    auto adj = t_.adjacency();
    std::vector<char> target(adj.size(), 0);
    for (int c : t_.components_with(y)) target[static_cast<std::size_t>(c)] = 1;
    auto path = tree_path(adj, t_.components_with(x), target);
    if (path.size() < 3) throw std::logic_error("no tri-tree path between endpoints");

    const std::size_t k = path.size() / 2;  // number of pairs on the path
    auto comp_at = [&](std::size_t j) { return path[2 * j]; };
    auto pair_at = [&](std::size_t j) { return t_.pairs[static_cast<std::size_t>(path[2 * j - 1]) - t_.components.size()]; };

    VertexSet w{x, y};
    for (std::size_t j = 1; j <= k; ++j) {
      w.push_back(pair_at(j).lo);
      w.push_back(pair_at(j).hi);
    }
    std::vector<TriComponent> new_cycles;
    std::vector<Edge> new_pairs;
    for (std::size_t j = 0; j <= k; ++j) {
      const TriComponent& c = t_.components[static_cast<std::size_t>(comp_at(j))];
      if (!c.cycle) {
        w.insert(w.end(), c.vertices.begin(), c.vertices.end());
        continue;
      }
      auto order = cycle_order(t_.component_graph(g_, comp_at(j)));
      std::vector<Edge> removed;
      std::vector<Vertex> split;
      if (j > 0) removed.push_back(pair_at(j));
      if (j < k) removed.push_back(pair_at(j + 1));
      if (j == 0) split.push_back(x);
      if (j == k) split.push_back(y);
      for (auto& arc : cycle_arcs(order, removed, split)) {
        if (arc.size() < 3) continue;
        new_pairs.emplace_back(arc.front(), arc.back());
        new_cycles.push_back({sorted(arc), true});
      }
    }

    std::vector<VertexSet> drop_comps;
    std::vector<Edge> drop_pairs;
    for (std::size_t j = 0; j <= k; ++j) drop_comps.push_back(t_.components[static_cast<std::size_t>(comp_at(j))].vertices);
    for (std::size_t j = 1; j <= k; ++j)
      if (adj[static_cast<std::size_t>(path[2 * j - 1])].size() == 2) drop_pairs.push_back(pair_at(j));
    for (const auto& vs : drop_comps) erase_component(t_, vs);
    for (const auto& p : drop_pairs) erase_pair(t_, p);
    t_.components.push_back({sorted(w), false});
    for (auto& c : new_cycles) t_.components.push_back(std::move(c));
    for (auto& p : new_pairs) t_.pairs.push_back(p);
    t_.normalize();
  }

  const Graph& g_;
  TriTree& t_;
};

void sort_blocks(DecompositionState& s) {
  std::sort(s.blocks.begin(), s.blocks.end(), [](const Block& a, const Block& b) { return a.vertices < b.vertices; });
}

ChangeType make(ChangeType::Direction d, int a, int b) { return ChangeType{d, a, b}; }

}  // namespace

std::vector<Vertex> cycle_order(const Graph& cyc) {
  auto active = cyc.active_vertices();
  if (active.empty()) return {};
  for (Vertex v : active)
    if (cyc.degree(v) != 2) throw NotOnCycle("graph is not a cycle");
  std::vector<Vertex> order{active.front()};
  Vertex prev = active.front(), cur = cyc.neighbours(active.front()).front();
  while (cur != active.front()) {
    order.push_back(cur);
    auto nb = cyc.neighbours(cur);
    Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (order.size() != active.size()) throw NotOnCycle("graph is not a single cycle");
  return order;
}

ChangeType classify_change(const DecompositionState& state, const ChangeEvent& e) {
  const Vertex x = e.edge.lo, y = e.edge.hi;
  const Graph& g = state.graph;
  using D = ChangeType::Direction;
  if (e.kind == ChangeEvent::Kind::insert) {
    Graph g2 = apply_change(g, e);
    if (!is_planar(g2)) throw NonPlanarResult("insertion of (" + std::to_string(x) + "," + std::to_string(y) + ") breaks planarity");
    auto labels = component_labels(g);
    if (labels[static_cast<std::size_t>(x)] != labels[static_cast<std::size_t>(y)]) return make(D::plus, 0, 2);
    int bi = state.block_containing(x, y);
    if (bi < 0) return make(D::plus, 1, 2);
    const TriTree& t = *state.blocks[static_cast<std::size_t>(bi)].tri;
    auto both = t.components_with(x, y);
    bool any3 = false;
    for (int c : both) any3 |= !t.components[static_cast<std::size_t>(c)].cycle;
    if (any3) return make(D::plus, 3, 3);
    if (!both.empty()) return make(D::plus, 2, 2);
    return make(D::plus, 2, 3);
  }
  Graph g2 = apply_change(g, e);
  int bi = state.block_containing(x, y);
  const auto& blk = state.blocks[static_cast<std::size_t>(bi)];
  if (!blk.tri) return make(D::minus, 2, 0);
  const TriTree& t = *blk.tri;
  const bool pair = t.pair_index(Edge(x, y)) >= 0;
  for (int c : t.components_with(x, y)) {
    if (t.components[static_cast<std::size_t>(c)].cycle) continue;
    if (pair) return make(D::minus, 3, 3);
    return is_3connected(t.component_graph(g2, c)) ? make(D::minus, 3, 3) : make(D::minus, 3, 2);
  }
  return pair ? make(D::minus, 2, 2) : make(D::minus, 2, 1);
}

ChangeType classify_change(const Graph& g, const ChangeEvent& e) {
  return classify_change(build_decomposition(g), e);
}

DecompositionState update_decomposition(const DecompositionState& state, const ChangeEvent& e, const ChangeType& t) {
  if (classify_change(state, e) != t) throw TypeMismatch("change type " + t.str() + " does not match the event");
  const Vertex x = e.edge.lo, y = e.edge.hi;
  DecompositionState out = state;
  out.graph = apply_change(state.graph, e);
  const Graph& g2 = out.graph;

  if (t.direction == ChangeType::Direction::plus) {
    if (t.k_before == 0) {
      out.blocks.push_back(Block{{x, y}, std::nullopt});
    } else if (t.k_before == 1) {
      BCTree bc = state.bc_forest();
      auto adj = bc.adjacency();
      std::vector<char> target(adj.size(), 0);
      target[static_cast<std::size_t>(bc.node_of(y))] = 1;
      auto path = tree_path(adj, {bc.node_of(x)}, target);
      const auto nb = static_cast<int>(bc.blocks.size());
      auto cut_at = [&](std::size_t i) { return bc.cuts[static_cast<std::size_t>(path[i] - nb)]; };
      Block merged;
      merged.tri = TriTree{};
      VertexSet cyc{x};
      std::vector<VertexSet> old;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] >= nb) continue;
        Vertex entry = i == 0 ? x : cut_at(i - 1);
        Vertex exit = i + 1 == path.size() ? y : cut_at(i + 1);
        if (exit != y) cyc.push_back(exit);
        const Block& b = state.blocks[static_cast<std::size_t>(path[i])];
        old.push_back(b.vertices);
        merged.vertices.insert(merged.vertices.end(), b.vertices.begin(), b.vertices.end());
        if (!b.tri) continue;
        TriTree sub = *b.tri;
        BlockUpdater(g2, sub).insert(entry, exit);
        sub.pairs.emplace_back(entry, exit);
        for (auto& c : sub.components) merged.tri->components.push_back(std::move(c));
        for (auto& p : sub.pairs) merged.tri->pairs.push_back(p);
      }
      cyc.push_back(y);
      merged.tri->components.push_back({sorted(cyc), true});
      merged.tri->normalize();
      merged.vertices = sorted(merged.vertices);
      std::erase_if(out.blocks, [&](const Block& b) { return std::find(old.begin(), old.end(), b.vertices) != old.end(); });
      out.blocks.push_back(std::move(merged));
    } else {
      auto& blk = out.blocks[static_cast<std::size_t>(state.block_containing(x, y))];
      BlockUpdater(g2, *blk.tri).insert(x, y);
    }
  } else {
    int bi = state.block_containing(x, y);
    if (t.k_after == 0) {
      out.blocks.erase(out.blocks.begin() + bi);
    } else if (t.k_after == 1) {
      const Block& blk = state.blocks[static_cast<std::size_t>(bi)];
      const TriTree& tri = *blk.tri;
      int s_idx = -1;
      for (int c : tri.components_with(x, y))
        if (tri.components[static_cast<std::size_t>(c)].cycle) s_idx = c;
      auto order = cycle_order(tri.component_graph(state.graph, s_idx));
      auto ix = std::find(order.begin(), order.end(), x) - order.begin();
      std::rotate(order.begin(), order.begin() + ix, order.end());
      if (order[1] == y) std::reverse(order.begin() + 1, order.end());
      auto adj = tri.adjacency();
      std::vector<Block> pieces;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        Edge edge(order[i], order[i + 1]);
        int pi = tri.pair_index(edge);
        if (pi < 0) {
          pieces.push_back(Block{{edge.lo, edge.hi}, std::nullopt});
          continue;
        }
        const int start = static_cast<int>(tri.components.size()) + pi;
        std::vector<char> seen(adj.size(), 0);
        seen[static_cast<std::size_t>(s_idx)] = 1;
        seen[static_cast<std::size_t>(start)] = 1;
        std::vector<int> st{start};
        TriTree sub;
        VertexSet vs;
        while (!st.empty()) {
          int u = st.back();
          st.pop_back();
          if (tri.is_pair_node(u)) {
            sub.pairs.push_back(tri.pairs[static_cast<std::size_t>(u) - tri.components.size()]);
          } else {
            const auto& c = tri.components[static_cast<std::size_t>(u)];
            sub.components.push_back(c);
            vs.insert(vs.end(), c.vertices.begin(), c.vertices.end());
          }
          for (int v : adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(v)]) {
              seen[static_cast<std::size_t>(v)] = 1;
              st.push_back(v);
            }
        }
        sub.normalize();
        BlockUpdater(g2, sub).normalize_pair(edge);
        pieces.push_back(Block{sorted(vs), std::move(sub)});
      }
      out.blocks.erase(out.blocks.begin() + bi);
      for (auto& p : pieces) out.blocks.push_back(std::move(p));
    } else {
      BlockUpdater(g2, *out.blocks[static_cast<std::size_t>(bi)].tri).remove(x, y);
    }
  }
  sort_blocks(out);
  return out;
}

}  // namespace dp
