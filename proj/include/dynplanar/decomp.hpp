#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynplanar/graph.hpp"

namespace dp {

using VertexSet = std::vector<Vertex>;  // always sorted, no duplicates

class TypeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotCoherent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DifferentTrees : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotOnCycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AmbiguousOrientation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotAFacePair : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Still3Connected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class StillBiconnected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Block-cut forest. Cut vertices are derived: vertices lying in two or more blocks.
struct BCTree {
  std::vector<VertexSet> blocks;  // sorted
  std::vector<Vertex> cuts;       // sorted

  // Node ids: [0, blocks) are blocks, then cut vertices in `cuts` order.
  int node_count() const { return static_cast<int>(blocks.size() + cuts.size()); }
  std::vector<std::vector<int>> adjacency() const;
  int cut_node(Vertex c) const;  // -1 if c is not a cut vertex
  // Block node if v is in exactly one block, cut node if it is a cut vertex, -1 if isolated.
  int node_of(Vertex v) const;
  bool operator==(const BCTree&) const = default;
};

struct TriComponent {
  VertexSet vertices;
  bool cycle = false;  // otherwise 3-connected
  auto operator<=>(const TriComponent&) const = default;
};

// Triconnected component tree of one biconnected block. A pair node is adjacent to exactly the
// components containing both of its vertices; each such component carries the pair as a virtual
// edge unless the edge is real anyway.
struct TriTree {
  std::vector<TriComponent> components;  // sorted
  std::vector<Edge> pairs;               // sorted

  void normalize();
  bool operator==(const TriTree&) const = default;

  // Node ids: [0, components) then pairs.
  int node_count() const { return static_cast<int>(components.size() + pairs.size()); }
  bool is_pair_node(int id) const { return id >= static_cast<int>(components.size()); }
  std::vector<std::vector<int>> adjacency() const;
  int component_index(const VertexSet& vs) const;  // -1 if absent
  int pair_index(Edge p) const;                    // -1 if absent
  std::vector<int> components_with(Vertex a) const;
  std::vector<int> components_with(Vertex a, Vertex b) const;
  // Real edges of `host` inside component i, plus the virtual edges of its pairs.
  Graph component_graph(const Graph& host, int i) const;
};

struct Block {
  VertexSet vertices;
  std::optional<TriTree> tri;  // present iff the block has at least 3 vertices
  bool operator==(const Block&) const = default;
};

struct DecompositionState {
  Graph graph;
  std::vector<Block> blocks;  // sorted by vertex set

  bool operator==(const DecompositionState&) const = default;
  int block_containing(Vertex a, Vertex b) const;  // -1 if none
  std::vector<int> blocks_containing(Vertex a) const;
  BCTree bc_forest() const;
};

BCTree build_bc_tree(const Graph& g);
TriTree build_tri_tree(const Graph& bicomp);
DecompositionState build_decomposition(const Graph& g);

// Change type computed from the maintained decomposition of the pre-change graph.
ChangeType classify_change(const DecompositionState& state, const ChangeEvent& e);
ChangeType classify_change(const Graph& g, const ChangeEvent& e);

DecompositionState update_decomposition(const DecompositionState& state, const ChangeEvent& e,
                                        const ChangeType& t);

// First human-readable difference between two states, empty if equal.
std::string describe_difference(const DecompositionState& a, const DecompositionState& b);

std::string to_dot(const DecompositionState& state);

// ---- paths, distances, disks ----

struct CoherentPath {
  int block = -1;
  std::vector<int> nodes;  // tri-tree node ids from c1 to c2
  Vertex a1 = 0;
  Vertex a2 = 0;
};

std::optional<CoherentPath> coherent_path(const DecompositionState& state, const TriComponent& c1,
                                          const TriComponent& c2, Vertex a1, Vertex a2);

// The merged component graph G[path] + (a1,a2).
Graph merged_component_graph(const DecompositionState& state, const CoherentPath& path);

bool common_face_after_insert(const DecompositionState& state, const CoherentPath& path,
                              const std::vector<Vertex>& s);

int tree_distance(const std::vector<std::vector<int>>& tree, int x, int y);

// Cyclic vertex order of a cycle graph (starting at its smallest vertex).
std::vector<Vertex> cycle_order(const Graph& cycle);

// Directed distance from u to v walking the cycle in the direction s1 -> s2 -> s3.
int cycle_distance(const std::vector<Vertex>& cycle, Vertex s1, Vertex s2, Vertex s3, Vertex u, Vertex v);

struct DiskGraph {
  std::vector<std::pair<Vertex, Vertex>> nodes;  // (on f1, on f2), in successor order
  std::vector<int> successor;                    // successor[i] is the next node index
};

DiskGraph disk_graph(const Graph& c, const CombFace& f1, const CombFace& f2);

struct TriUnfurl {
  std::vector<Edge> pairs;  // in path order
  int path_length = 0;
};
TriUnfurl predict_unfurl_tri(const Graph& c, Edge e);

struct BCUnfurl {
  std::vector<Vertex> cuts;  // in cycle order, walking from e.lo away from e.hi
  int path_length = 0;
};
BCUnfurl predict_unfurl_bc(const Graph& b, Edge e);

}  // namespace dp
