#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dp {

using Vertex = int;

// Unordered vertex pair, stored with lo < hi.
struct Edge {
  Vertex lo = 0;
  Vertex hi = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  bool contains(Vertex v) const { return v == lo || v == hi; }
  Vertex other(Vertex v) const { return v == lo ? hi : lo; }
  auto operator<=>(const Edge&) const = default;
};

class IllegalChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPlanarResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple undirected graph over the fixed universe [0, n).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return edge_count_; }

  bool has_edge(Vertex u, Vertex v) const;
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  std::span<const Vertex> neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  std::vector<Edge> edges() const;
  // Vertices with at least one incident edge.
  std::vector<Vertex> active_vertices() const;

  // Subgraph on `keep` (other vertices become isolated); universe unchanged.
  Graph restricted_to(std::span<const Vertex> keep) const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  void check(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;  // sorted
  int edge_count_ = 0;
};

Graph graph_from_edges(int n, std::span<const Edge> edges);

struct ChangeEvent {
  enum class Kind { insert, remove };
  Kind kind = Kind::insert;
  Edge edge;
};

struct ChangeType {
  enum class Direction { plus, minus };
  Direction direction = Direction::plus;
  int k_before = 0;
  int k_after = 0;

  auto operator<=>(const ChangeType&) const = default;
  std::string str() const;  // e.g. "+2,3"
};

// Returns g with the event applied; throws IllegalChange on duplicate insert or missing delete.
Graph apply_change(const Graph& g, const ChangeEvent& e);

// Connected component labels (-1 never used; isolated vertices get their own label).
std::vector<int> component_labels(const Graph& g);
std::vector<Vertex> component_of(const Graph& g, Vertex v);

// Blocks of g as sorted vertex sets (single edges included, isolated vertices excluded).
std::vector<std::vector<Vertex>> biconnected_blocks(const Graph& g);
bool is_biconnected(const Graph& g);   // over active vertices, needs >= 2 of them
bool is_3connected(const Graph& g);    // over active vertices, needs >= 4 of them

// ---- planarity and embeddings ----

// Cyclic vertex sequence bounding one face, in one of its two orientations.
struct CombFace {
  std::vector<Vertex> cycle;

  CombFace reversed() const;
  // Rotated so the smallest vertex comes first, orientation kept.
  CombFace normalized() const;
  bool same_orientation_as(const CombFace& o) const;
  bool same_face_as(const CombFace& o) const;  // either orientation
  bool contains(Vertex v) const;
  bool operator==(const CombFace& o) const { return cycle == o.cycle; }
};

struct Embedding {
  std::vector<CombFace> faces;  // every directed edge appears in exactly one face
  CombFace outer;

  // Faces (as indices) whose boundary contains the directed edge u->v or v->u.
  std::vector<int> faces_with_edge(Vertex u, Vertex v) const;
  std::vector<int> faces_with_vertex(Vertex v) const;
};

class NotAFace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Not3Connected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_planar(const Graph& g);

// Faces of a planar biconnected graph (path-addition), consistently oriented; nullopt if non-planar.
std::optional<std::vector<CombFace>> planar_faces(const Graph& biconnected);

// Unique embedding of a 3-connected planar graph with `outer` as outer face, oriented like `outer`.
Embedding embed_3connected(const Graph& c, const CombFace& outer);

// Embedding using the canonical outer face: the smallest normalized face of the path-addition result.
Embedding embed_3connected(const Graph& c);

}  // namespace dp
