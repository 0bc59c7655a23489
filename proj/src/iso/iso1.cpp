#include <algorithm>
#include <map>

#include "dynplanar/iso.hpp"
#include "internal.hpp"

namespace dp {

using namespace iso_detail;

struct IsoSession::BCView {
  const BCTree* bc = nullptr;
  const std::vector<std::vector<int>>* adj = nullptr;
  Colouring colour;
  int hole = -1;
  std::map<std::pair<int, int>, int> memo;

  int block_count() const { return static_cast<int>(bc->blocks.size()); }
  bool is_cut(int node) const { return node >= block_count(); }
  Vertex cut_vertex(int node) const { return bc->cuts[static_cast<std::size_t>(node - block_count())]; }
};

const BCTree& IsoSession::bc() {
  if (!bc_) {
    bc_ = state_->bc_forest();
    bc_adj_ = bc_->adjacency();
  }
  return *bc_;
}

int IsoSession::state_block_of(int bc_block) const {
  const auto& vs = bc_->blocks[static_cast<std::size_t>(bc_block)];
  auto it = std::lower_bound(state_->blocks.begin(), state_->blocks.end(), vs,
                             [](const Block& b, const VertexSet& v) { return b.vertices < v; });
  if (it == state_->blocks.end() || it->vertices != vs) throw std::logic_error("BC block missing from decomposition");
  return static_cast<int>(it - state_->blocks.begin());
}

Colouring IsoSession::col_graph_colours(BCView& t, int node, int parent) {
  Colouring c = t.colour;
  const Vertex up = parent >= 0 ? t.cut_vertex(parent) : -1;
  for (Vertex v : t.bc->blocks[static_cast<std::size_t>(node)]) {
    auto& slot = c[static_cast<std::size_t>(v)];
    if (v == up) {
      slot = marked(kParentCut, slot);
    } else if (int cn = t.bc->cut_node(v); cn >= 0) {
      slot = node == t.hole ? marked(kCutCutoff, slot) : marked(kCutBelow, slot, bc_class(t, cn, node));
    }
  }
  return c;
}

int IsoSession::bc_class(BCView& t, int node, int parent) {
  const auto memo_key = std::make_pair(node, parent);
  if (auto it = t.memo.find(memo_key); it != t.memo.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  int id = 0;
  if (t.is_cut(node)) {
    const Vertex v = t.cut_vertex(node);
    std::vector<long> key{node == t.hole ? kCutHole : kCut, colour_at(t.colour, v)};
    if (node != t.hole) {
      std::vector<long> children;
      for (int ch : (*t.adj)[static_cast<std::size_t>(node)])
        if (ch != parent) children.push_back(bc_class(t, ch, node));
      std::sort(children.begin(), children.end());
      key.insert(key.end(), children.begin(), children.end());
    }
    id = registry_.intern(key);
  } else {
    id = block_class_wrapped(state_block_of(node), col_graph_colours(t, node, parent));
    if (node == t.hole) id = registry_.intern({kBlockHole, id});
  }
  t.memo.emplace(memo_key, id);
  return id;
}

Colouring IsoSession::colour_cut_vertices(int block, Vertex parent_cut, const Colouring& base) {
  const BCTree& tree = bc();
  const auto& vs = state_->blocks[static_cast<std::size_t>(block)].vertices;
  auto it = std::find(tree.blocks.begin(), tree.blocks.end(), vs);
  const int node = static_cast<int>(it - tree.blocks.begin());
  int parent = -1;
  if (parent_cut >= 0) {
    parent = tree.cut_node(parent_cut);
    if (parent < 0 || !std::binary_search(vs.begin(), vs.end(), parent_cut))
      throw InvalidContext("parent cut is not a cut vertex of the block");
  }
  BCView t{&tree, &bc_adj_, wrapped(base), -1, {}};
  return col_graph_colours(t, node, parent);
}

int IsoSession::component_class_wrapped(Vertex v, const Colouring& colour) {
  const BCTree& tree = bc();
  const int start = tree.node_of(v);
  if (start < 0) return registry_.intern({kIsolated, colour_at(colour, v)});
  std::vector<int> nodes;
  std::vector<char> seen(static_cast<std::size_t>(tree.node_count()), 0);
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(x)]) continue;
    seen[static_cast<std::size_t>(x)] = 1;
    nodes.push_back(x);
    for (int w : bc_adj_[static_cast<std::size_t>(x)]) stack.push_back(w);
  }
  BCView t{&tree, &bc_adj_, colour, -1, {}};
  const int root = iso_detail::tree_centre(bc_adj_, nodes, [&](int x) { return t.is_cut(x); });
  return bc_class(t, root, -1);
}

int IsoSession::component_class(Vertex v, const Colouring& colour) { return component_class_wrapped(v, wrapped(colour)); }

bool IsoSession::iso1_query(Vertex a, Vertex astar) {
  ++stats_.iso1_queries;
  if (a == astar) return true;
  auto side = [&](Vertex u) {
    Colouring c = wrapped(colour_);
    c[static_cast<std::size_t>(u)] = marked(kQueryA, c[static_cast<std::size_t>(u)]);
    return component_class_wrapped(u, c);
  };
  return side(a) == side(astar);
}

bool IsoSession::components_isomorphic(Vertex u, Vertex v) {
  ++stats_.component_queries;
  const auto labels = component_labels(state_->graph);
  if (labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(v)]) return true;
  const Colouring c = wrapped(colour_);
  return component_class_wrapped(u, c) == component_class_wrapped(v, c);
}

void IsoSession::check_bc_context(const BCContext& x) {
  const BCTree& tree = bc();
  const int n = tree.node_count();
  if (x.root < 0 || x.root >= n) throw InvalidContext("root out of range");
  const auto& nb = bc_adj_[static_cast<std::size_t>(x.root)];
  if (x.parent >= 0 && std::find(nb.begin(), nb.end(), x.parent) == nb.end())
    throw InvalidContext("parent is not adjacent to root");
  std::vector<Vertex> allowed;
  auto add_node = [&](int node) {
    if (node >= static_cast<int>(tree.blocks.size())) {
      allowed.push_back(tree.cuts[static_cast<std::size_t>(node) - tree.blocks.size()]);
    } else {
      const auto& vs = tree.blocks[static_cast<std::size_t>(node)];
      allowed.insert(allowed.end(), vs.begin(), vs.end());
    }
  };
  add_node(x.root);
  if (x.hole >= 0) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    if (x.parent >= 0) seen[static_cast<std::size_t>(x.parent)] = 1;
    std::vector<int> stack{x.root};
    bool found = false;
    while (!stack.empty() && !found) {
      int v = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      found = v == x.hole;
      for (int w : bc_adj_[static_cast<std::size_t>(v)]) stack.push_back(w);
    }
    if (!found) throw InvalidContext("hole is not below the root");
    add_node(x.hole);
  }
  for (auto [v, c] : x.recolour)
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw InvalidContext("recolouring touches a vertex outside root and hole");
}

bool IsoSession::x_iso1(const BCContext& x, const BCContext& xs) {
  check_bc_context(x);
  check_bc_context(xs);
  auto cls = [&](const BCContext& c) {
    Colouring col = wrapped(colour_);
    for (auto [v, k] : c.recolour) col[static_cast<std::size_t>(v)] = marked(kRecolour, k);
    BCView t{&*bc_, &bc_adj_, std::move(col), c.hole, {}};
    return bc_class(t, c.root, c.parent);
  };
  return cls(x) == cls(xs);
}

}  // namespace dp
