#include <algorithm>
#include <sstream>

#include "dynplanar/decomp.hpp"

namespace dp {

namespace {
bool has(const VertexSet& vs, Vertex v) { return std::binary_search(vs.begin(), vs.end(), v); }
}  // namespace

std::vector<std::vector<int>> BCTree::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count()));
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    int cid = static_cast<int>(blocks.size() + c);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (has(blocks[b], cuts[c])) {
        adj[b].push_back(cid);
        adj[static_cast<std::size_t>(cid)].push_back(static_cast<int>(b));
      }
  }
  return adj;
}

int BCTree::cut_node(Vertex c) const {
  auto it = std::lower_bound(cuts.begin(), cuts.end(), c);
  if (it == cuts.end() || *it != c) return -1;
  return static_cast<int>(blocks.size()) + static_cast<int>(it - cuts.begin());
}

int BCTree::node_of(Vertex v) const {
  if (int c = cut_node(v); c >= 0) return c;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (has(blocks[b], v)) return static_cast<int>(b);
  return -1;
}

void TriTree::normalize() {
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()), components.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

std::vector<std::vector<int>> TriTree::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count()));
  const int nc = static_cast<int>(components.size());
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (int c : components_with(pairs[p].lo, pairs[p].hi)) {
      adj[static_cast<std::size_t>(c)].push_back(nc + static_cast<int>(p));
      adj[static_cast<std::size_t>(nc) + p].push_back(c);
    }
  return adj;
}

int TriTree::component_index(const VertexSet& vs) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].vertices == vs) return static_cast<int>(i);
  return -1;
}

int TriTree::pair_index(Edge p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
  if (it == pairs.end() || *it != p) return -1;
  return static_cast<int>(it - pairs.begin());
}

std::vector<int> TriTree::components_with(Vertex a) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (has(components[i].vertices, a)) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> TriTree::components_with(Vertex a, Vertex b) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (has(components[i].vertices, a) && has(components[i].vertices, b)) out.push_back(static_cast<int>(i));
  return out;
}

Graph TriTree::component_graph(const Graph& host, int i) const {
  const auto& vs = components[static_cast<std::size_t>(i)].vertices;
  Graph out = host.restricted_to(vs);
  for (const Edge& p : pairs)
    if (has(vs, p.lo) && has(vs, p.hi) && !out.has_edge(p.lo, p.hi)) out.add_edge(p.lo, p.hi);
  return out;
}

int DecompositionState::block_containing(Vertex a, Vertex b) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (has(blocks[i].vertices, a) && has(blocks[i].vertices, b)) return static_cast<int>(i);
  return -1;
}

std::vector<int> DecompositionState::blocks_containing(Vertex a) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (has(blocks[i].vertices, a)) out.push_back(static_cast<int>(i));
  return out;
}

BCTree DecompositionState::bc_forest() const {
  BCTree t;
  std::vector<int> count(static_cast<std::size_t>(graph.order()), 0);
  for (const auto& b : blocks) {
    t.blocks.push_back(b.vertices);
    for (Vertex v : b.vertices) ++count[static_cast<std::size_t>(v)];
  }
  for (Vertex v = 0; v < graph.order(); ++v)
    if (count[static_cast<std::size_t>(v)] >= 2) t.cuts.push_back(v);
  return t;
}

std::string describe_difference(const DecompositionState& a, const DecompositionState& b) {
  if (!(a.graph == b.graph)) return "graphs differ";
  auto set_str = [](const VertexSet& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "}";
  };
  if (a.blocks.size() != b.blocks.size())
    return "block count " + std::to_string(a.blocks.size()) + " vs " + std::to_string(b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto& x = a.blocks[i];
    const auto& y = b.blocks[i];
    if (x.vertices != y.vertices) return "block " + set_str(x.vertices) + " vs " + set_str(y.vertices);
    if (x.tri.has_value() != y.tri.has_value()) return "tri-tree presence differs in " + set_str(x.vertices);
    if (!x.tri || *x.tri == *y.tri) continue;
    std::ostringstream os;
    os << "tri-tree of " << set_str(x.vertices) << ": ";
    for (const auto& c : x.tri->components) os << (c.cycle ? "C" : "R") << set_str(c.vertices) << " ";
    for (const auto& p : x.tri->pairs) os << "P{" << p.lo << "," << p.hi << "} ";
    os << "vs ";
    for (const auto& c : y.tri->components) os << (c.cycle ? "C" : "R") << set_str(c.vertices) << " ";
    for (const auto& p : y.tri->pairs) os << "P{" << p.lo << "," << p.hi << "} ";
    return os.str();
  }
  return {};
}

std::string to_dot(const DecompositionState& state) {
  std::ostringstream os;
  auto label = [](const VertexSet& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i]);
    return s;
  };
  os << "graph decomposition {\n";
  BCTree bc = state.bc_forest();
  for (std::size_t b = 0; b < bc.blocks.size(); ++b) os << "  b" << b << " [shape=box,label=\"" << label(bc.blocks[b]) << "\"];\n";
  for (Vertex c : bc.cuts) os << "  c" << c << " [shape=circle,label=\"" << c << "\"];\n";
  auto adj = bc.adjacency();
  for (std::size_t b = 0; b < bc.blocks.size(); ++b)
    for (int nb : adj[b]) os << "  b" << b << " -- c" << bc.cuts[static_cast<std::size_t>(nb) - bc.blocks.size()] << ";\n";
  for (std::size_t b = 0; b < state.blocks.size(); ++b) {
    const auto& tri = state.blocks[b].tri;
    if (!tri) continue;
    os << "  subgraph cluster_tri" << b << " {\n    label=\"tri-tree " << label(state.blocks[b].vertices) << "\";\n";
    for (std::size_t i = 0; i < tri->components.size(); ++i)
      os << "    t" << b << "_" << i << " [shape=" << (tri->components[i].cycle ? "ellipse" : "box") << ",label=\""
         << label(tri->components[i].vertices) << "\"];\n";
    for (std::size_t p = 0; p < tri->pairs.size(); ++p)
      os << "    t" << b << "_p" << p << " [shape=diamond,label=\"" << tri->pairs[p].lo << " " << tri->pairs[p].hi << "\"];\n";
    auto tadj = tri->adjacency();
    for (std::size_t i = 0; i < tri->components.size(); ++i)
      for (int nb : tadj[i]) os << "    t" << b << "_" << i << " -- t" << b << "_p" << (static_cast<std::size_t>(nb) - tri->components.size()) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dp
