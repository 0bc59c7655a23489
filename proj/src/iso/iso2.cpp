#include <algorithm>
#include <map>
#include <tuple>

#include "dynplanar/iso.hpp"
#include "internal.hpp"

namespace dp {

using namespace iso_detail;

struct IsoSession::TriView {
  const Graph* host = nullptr;
  const TriTree* tree = nullptr;
  std::vector<std::vector<int>> adj;
  Colouring colour;
  int hole = -1;
  std::map<std::tuple<int, int, Vertex>, int> memo;

  int col(Vertex v) const { return colour_at(colour, v); }
  int component_count() const { return static_cast<int>(tree->components.size()); }
  Edge pair_of(int node) const { return tree->pairs[static_cast<std::size_t>(node - component_count())]; }
};

IsoSession::IsoSession(const DecompositionState& state, Fingerprinter& fp, Colouring colour)
    : state_(&state), fp_(&fp), colour_(std::move(colour)), registry_(fp) {}

int IsoSession::marked(int tag, long base, long extra) { return registry_.intern({kColour, tag, base, extra}); }

Colouring IsoSession::wrapped(const Colouring& raw) {
  Colouring out(static_cast<std::size_t>(state_->graph.order()));
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = marked(kPlain, colour_at(raw, static_cast<Vertex>(v)));
  return out;
}

IsoSession::TriView IsoSession::tri_view(int block, Colouring colour, int hole) {
  TriView t;
  t.host = &state_->graph;
  t.tree = &*state_->blocks[static_cast<std::size_t>(block)].tri;
  t.adj = t.tree->adjacency();
  t.colour = std::move(colour);
  t.hole = hole;
  return t;
}

int IsoSession::tri_class(TriView& t, int node, int parent, Vertex first) {
  const auto memo_key = std::make_tuple(node, parent, first);
  if (auto it = t.memo.find(memo_key); it != t.memo.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  const TriTree& tree = *t.tree;
  const int nc = t.component_count();
  int id = 0;

  if (tree.is_pair_node(node)) {
    const Edge pr = t.pair_of(node);
    const Vertex x = first, y = pr.other(first);
    std::vector<long> key{node == t.hole ? kPairHole : kPair, t.col(x), t.col(y), t.host->has_edge(x, y) ? 1 : 0};
    if (node != t.hole) {
      std::vector<long> children;
      for (int ch : t.adj[static_cast<std::size_t>(node)])
        if (ch != parent) children.push_back(tri_class(t, ch, node, x));
      std::sort(children.begin(), children.end());
      key.insert(key.end(), children.begin(), children.end());
    }
    id = registry_.intern(key);
  } else {
    const TriComponent& comp = tree.components[static_cast<std::size_t>(node)];
    const Graph g = tree.component_graph(*t.host, node);
    std::optional<Edge> up;
    Vertex x = 0, y = 0;
    if (parent >= 0) {
      up = t.pair_of(parent);
      x = first;
      y = up->other(first);
    }
    auto label = [&](Vertex u, Vertex w) -> int {
      if (up && Edge(u, w) == *up) return kParentLabel;
      const int p = tree.pair_index(Edge(u, w));
      if (p < 0) return 0;
      if (node == t.hole) return kHoleLabel;
      return tri_class(t, nc + p, node, u);
    };

    if (comp.cycle) {
      auto order = cycle_order(g);
      const std::size_t n = order.size();
      auto sequence = [&](const std::vector<Vertex>& walk) {
        std::vector<long> seq;
        for (std::size_t i = 0; i < n; ++i) {
          seq.push_back(t.col(walk[i]));
          seq.push_back(label(walk[i], walk[(i + 1) % n]));
        }
        return seq;
      };
      std::vector<long> best;
      if (up) {
        auto at = std::find(order.begin(), order.end(), x);
        std::rotate(order.begin(), at, order.end());
        if (order[1] != y) std::reverse(order.begin() + 1, order.end());
        best = sequence(order);
      } else {
        for (std::size_t s = 0; s < n; ++s)
          for (bool rev : {false, true}) {
            std::vector<Vertex> walk(n);
            for (std::size_t i = 0; i < n; ++i) walk[i] = order[rev ? (s + n - i) % n : (s + i) % n];
            auto seq = sequence(walk);
            if (best.empty() || seq < best) best = std::move(seq);
          }
      }
      std::vector<long> key{node == t.hole ? kCycleHole : (up ? kCycle : kCycleRoot), static_cast<long>(n)};
      key.insert(key.end(), best.begin(), best.end());
      id = registry_.intern(key);
    } else {
      LabelledComponent lc;
      lc.graph = g;
      lc.vertices = comp.vertices;
      lc.colour = t.colour;
      for (const Edge& e : g.edges())
        for (auto [u, w] : {std::pair{e.lo, e.hi}, std::pair{e.hi, e.lo}})
          if (int l = label(u, w); l != 0) lc.labels[{u, w}] = l;
      id = registry_.intern_rigid(lc, up ? std::vector<Vertex>{x, y} : std::vector<Vertex>{});
      if (node == t.hole) id = registry_.intern({kRigidHole, id});
    }
  }
  t.memo.emplace(memo_key, id);
  return id;
}

int IsoSession::tri_root_class(TriView& t, int root) {
  if (!t.tree->is_pair_node(root)) return tri_class(t, root, -1, 0);
  const Edge pr = t.pair_of(root);
  const int c1 = tri_class(t, root, -1, pr.lo), c2 = tri_class(t, root, -1, pr.hi);
  return registry_.intern({kPairRoot, std::min(c1, c2), std::max(c1, c2)});
}

int IsoSession::block_class_wrapped(int block, const Colouring& colour) {
  const Block& b = state_->blocks[static_cast<std::size_t>(block)];
  if (!b.tri) {
    const int c1 = colour_at(colour, b.vertices.front()), c2 = colour_at(colour, b.vertices.back());
    return registry_.intern({kBridge, std::min(c1, c2), std::max(c1, c2)});
  }
  TriView t = tri_view(block, colour, -1);
  std::vector<int> nodes(static_cast<std::size_t>(t.tree->node_count()));
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<int>(i);
  const int root = tree_centre(t.adj, nodes, [&](int v) { return t.tree->is_pair_node(v); });
  return tri_root_class(t, root);
}

int IsoSession::block_class(int block, const Colouring& colour) { return block_class_wrapped(block, wrapped(colour)); }

bool IsoSession::iso2_query(Vertex a, Vertex b, Vertex astar, Vertex bstar) {
  ++stats_.iso2_queries;
  auto block_of = [&](Vertex u, Vertex w) {
    if (u != w) return state_->block_containing(u, w);
    auto bs = state_->blocks_containing(u);
    return bs.size() == 1 ? bs[0] : -1;
  };
  const int bl = block_of(a, b), bls = block_of(astar, bstar);
  if (bl < 0 || bls < 0) throw NotBiconnectedPair("pair is not inside one biconnected component");
  if ((a == b) != (astar == bstar)) return false;
  auto side = [&](int block, Vertex u, Vertex w) {
    Colouring c = wrapped(colour_);
    c[static_cast<std::size_t>(u)] = marked(kQueryA, c[static_cast<std::size_t>(u)]);
    if (w != u) c[static_cast<std::size_t>(w)] = marked(kQueryB, c[static_cast<std::size_t>(w)]);
    return block_class_wrapped(block, c);
  };
  return side(bl, a, b) == side(bls, astar, bstar);
}

void IsoSession::check_tri_context(const RecolouredContext& x) const {
  if (x.block < 0 || x.block >= static_cast<int>(state_->blocks.size()))
    throw InvalidContext("block index out of range");
  const Block& b = state_->blocks[static_cast<std::size_t>(x.block)];
  if (!b.tri) throw InvalidContext("block has no tri-tree");
  const auto adj = b.tri->adjacency();
  const int n = b.tri->node_count();
  if (x.root < 0 || x.root >= n) throw InvalidContext("root out of range");
  if (x.parent >= 0) {
    const auto& nb = adj[static_cast<std::size_t>(x.root)];
    if (std::find(nb.begin(), nb.end(), x.parent) == nb.end()) throw InvalidContext("parent is not adjacent to root");
  }
  if (x.hole >= 0) {
    // The hole must lie in the subtree of root seen from parent.
    std::vector<int> stack{x.root};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    if (x.parent >= 0) seen[static_cast<std::size_t>(x.parent)] = 1;
    bool found = false;
    while (!stack.empty() && !found) {
      int v = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      found = v == x.hole;
      for (int w : adj[static_cast<std::size_t>(v)]) stack.push_back(w);
    }
    if (!found) throw InvalidContext("hole is not below the root");
  }
  auto node_vertices = [&](int node) -> std::vector<Vertex> {
    if (b.tri->is_pair_node(node)) {
      Edge p = b.tri->pairs[static_cast<std::size_t>(node) - b.tri->components.size()];
      return {p.lo, p.hi};
    }
    return b.tri->components[static_cast<std::size_t>(node)].vertices;
  };
  auto rv = node_vertices(x.root);
  auto hv = x.hole >= 0 ? node_vertices(x.hole) : std::vector<Vertex>{};
  for (auto [v, c] : x.recolour)
    if (std::find(rv.begin(), rv.end(), v) == rv.end() && std::find(hv.begin(), hv.end(), v) == hv.end())
      throw InvalidContext("recolouring touches a vertex outside root and hole");
  if (!b.tri->is_pair_node(x.root) && x.parent >= 0 && !b.tri->is_pair_node(x.parent))
    throw InvalidContext("component root needs a pair parent");
}

bool IsoSession::x_iso2(const RecolouredContext& x, const RecolouredContext& xs) {
  check_tri_context(x);
  check_tri_context(xs);
  auto cls = [&](const RecolouredContext& c) {
    Colouring col = wrapped(colour_);
    for (auto [v, k] : c.recolour) col[static_cast<std::size_t>(v)] = marked(kRecolour, k);
    TriView t = tri_view(c.block, std::move(col), c.hole);
    const TriTree& tree = *t.tree;
    int anchor_node = tree.is_pair_node(c.root) ? c.root : c.parent;
    if (anchor_node < 0) return tri_class(t, c.root, -1, 0);
    const Edge pr = t.pair_of(anchor_node);
    const Vertex first = c.swap_root ? pr.hi : pr.lo;
    if (tree.is_pair_node(c.root) && c.parent < 0) return registry_.intern({kPairRoot, tri_class(t, c.root, -1, first)});
    return tri_class(t, c.root, c.parent, first);
  };
  return cls(x) == cls(xs);
}

int IsoSession::sibling_iso_count(int block, int pair_node, int parent, int child, const std::map<Vertex, int>& recolour) {
  RecolouredContext ctx{block, pair_node, parent, -1, false, recolour};
  check_tri_context(ctx);
  const TriTree& tree = *state_->blocks[static_cast<std::size_t>(block)].tri;
  if (!tree.is_pair_node(pair_node)) throw InvalidContext("sibling counts live at separating pairs");
  const auto adj = tree.adjacency();
  const auto& nb = adj[static_cast<std::size_t>(pair_node)];
  if (child == parent || std::find(nb.begin(), nb.end(), child) == nb.end())
    throw InvalidContext("child is not a child of the pair");
  Colouring col = wrapped(colour_);
  for (auto [v, k] : recolour) col[static_cast<std::size_t>(v)] = marked(kRecolour, k);
  TriView t = tri_view(block, std::move(col), -1);
  const Vertex x = t.pair_of(pair_node).lo;
  const int mine = tri_class(t, child, pair_node, x);
  int count = 0;
  for (int ch : nb)
    if (ch != parent && ch != child && tri_class(t, ch, pair_node, x) == mine) ++count;
  return count;
}

std::vector<std::pair<Vertex, Vertex>> fix_pair_orientation(const DecompositionState& state, const CoherentPath& path,
                                                            std::pair<Vertex, Vertex> first) {
  const TriTree& tree = *state.blocks[static_cast<std::size_t>(path.block)].tri;
  std::vector<Edge> pairs;
  for (int node : path.nodes)
    if (tree.is_pair_node(node)) pairs.push_back(tree.pairs[static_cast<std::size_t>(node) - tree.components.size()]);
  if (pairs.empty()) return {};
  if (Edge(first.first, first.second) != pairs[0]) throw std::invalid_argument("first orientation is not the first pair");
  std::vector<std::pair<Vertex, Vertex>> out{first};
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const Vertex prev = out.back().first;
    const Edge pr = pairs[i];
    const bool lo_ok = common_face_after_insert(state, path, {path.a1, path.a2, prev, pr.lo});
    const bool hi_ok = common_face_after_insert(state, path, {path.a1, path.a2, prev, pr.hi});
    if (lo_ok == hi_ok) throw AmbiguousFace("pair orientation is not determined by a face");
    out.emplace_back(lo_ok ? pr.lo : pr.hi, lo_ok ? pr.hi : pr.lo);
  }
  return out;
}

}  // namespace dp
