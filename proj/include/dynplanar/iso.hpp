#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynplanar/decomp.hpp"
#include "dynplanar/graph.hpp"
#include "dynplanar/modarith.hpp"

namespace dp {

class InvalidContext : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotBiconnectedPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class AmbiguousFace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vertex colours indexed by vertex id; missing entries (or an empty vector) mean colour 0.
using Colouring = std::vector<int>;
inline int colour_at(const Colouring& c, Vertex v) {
  return static_cast<std::size_t>(v) < c.size() ? c[static_cast<std::size_t>(v)] : 0;
}

struct Matching {
  std::vector<std::pair<Vertex, Vertex>> pairs;  // sorted by first
  bool verified = false;

  std::optional<Vertex> image(Vertex v) const;
};

// True iff m is a bijection between the active vertices of g1 and g2 preserving edges and non-edges.
bool verify_iso(const Graph& g1, const Graph& g2, const Matching& m);

// A component graph with vertex colours and directed edge labels (label 0 when absent).
struct LabelledComponent {
  Graph graph;
  VertexSet vertices;
  bool cycle = false;
  Colouring colour;
  std::map<std::pair<Vertex, Vertex>, int> labels;

  int colour_of(Vertex v) const { return colour_at(colour, v); }
  int label(Vertex u, Vertex v) const;
};

LabelledComponent plain_component(const Graph& g, bool cycle, const Colouring& colour = {});

// verify_iso plus colours and directed labels.
bool verify_labelled(const LabelledComponent& c1, const LabelledComponent& c2, const Matching& m);

struct FingerprintStats {
  long queries = 0;
  long flags_tried = 0;
  long collisions = 0;
  long exact_fallbacks = 0;
  long refreshes = 0;
};

// Supplies Tutte bundles for fingerprinting: the live family bundles when the host is live,
// otherwise bundles computed over the same primes and cached per host.
class Fingerprinter {
 public:
  explicit Fingerprinter(BundleFamily& family, Exec exec = Exec::parallel);
  explicit Fingerprinter(PoolConfig cfg = {}, Exec exec = Exec::parallel);

  std::vector<Residue> primes() const;
  // Tutte coordinates of host pinned at pins, one slot per prime; empty where singular mod that prime.
  std::vector<std::optional<Coords>> coords(const Graph& host, const Pins& pins);
  void refresh();

  const FingerprintStats& stats() const { return stats_; }
  FingerprintStats& stats() { return stats_; }

 private:
  // Bundles at canonical pins, one pointer per prime (null where singular).
  std::vector<const TutteBundle*> canonical(const Graph& host);

  BundleFamily* family_ = nullptr;
  PrimePool own_;
  Exec exec_;
  std::map<std::vector<Edge>, std::pair<std::vector<Residue>, std::vector<std::optional<TutteBundle>>>> cache_;
  FingerprintStats stats_;
};

// ---- iso3 ----

struct Iso3Query {
  // Up to four constraints x -> x*; the first three of a full query are distinct.
  std::vector<std::pair<Vertex, Vertex>> fixed;
};

// Decides whether an isomorphism c -> c* exists extending q.fixed and preserving colours and labels.
// Cycles are checked over rotations and reflections; 3-connected components by Tutte fingerprints
// under every flag of c*, each candidate verified exactly. Mixed kinds give false.
bool iso3_query(Fingerprinter& fp, const LabelledComponent& c, const LabelledComponent& cstar, const Iso3Query& q,
                Matching* witness = nullptr);

// Pairing by coordinate fingerprints of c pinned at pins and c* pinned at pins*; nullopt if a
// fingerprint repeats or has no partner. Throws PoolTooSmall when no prime is usable on both sides.
std::optional<Matching> extract_matching(Fingerprinter& fp, const Graph& c, const Pins& pins, const Graph& cstar,
                                         const Pins& pins_star);

// Exact backtracking matcher used when fingerprints are not unique.
std::optional<Matching> match_exact(const LabelledComponent& c, const LabelledComponent& cstar,
                                    std::span<const std::pair<Vertex, Vertex>> fixed);

// Flags of a 3-connected planar graph: three consecutive vertices of a face, both orientations.
std::vector<Pins> face_flags(const Graph& c);

// ---- class registry shared by the iso2 and iso1 layers ----

// Interns structural keys and 3-connected labelled components into class ids.
class ClassRegistry {
 public:
  explicit ClassRegistry(Fingerprinter& fp) : fp_(&fp) {}

  int intern(const std::vector<long>& key);
  // Class of c up to isomorphisms mapping anchors[i] to the other's anchors[i].
  int intern_rigid(const LabelledComponent& c, const std::vector<Vertex>& anchors);

  Fingerprinter& fingerprinter() { return *fp_; }
  long rigid_comparisons() const { return rigid_comparisons_; }
  std::size_t size() const { return keys_.size() + rigid_count_; }

 private:
  struct Rep {
    LabelledComponent component;
    std::vector<Vertex> anchors;
    int id;
  };

  Fingerprinter* fp_;
  std::map<std::vector<long>, int> keys_;
  std::map<std::vector<long>, std::vector<Rep>> buckets_;
  std::map<std::vector<long>, int> exact_;
  int next_ = 1;
  std::size_t rigid_count_ = 0;
  long rigid_comparisons_ = 0;
};

// ---- iso2 ----

// A context of a tri-tree: the subtree at `root` seen from `parent` (-1 for the whole tree),
// cut below `hole` (-1 for none), with colours overridden on root and hole vertices.
struct RecolouredContext {
  int block = -1;  // index into DecompositionState::blocks
  int root = -1;
  int parent = -1;
  int hole = -1;
  bool swap_root = false;  // anchor order of the root pair is (hi, lo)
  std::map<Vertex, int> recolour;
};

struct IsoStats {
  long iso2_queries = 0;
  long iso1_queries = 0;
  long component_queries = 0;
  long memo_hits = 0;
};

// Query layer over one decomposition epoch. Classes are interned per session; rebuild the
// session after every change.
class IsoSession {
 public:
  IsoSession(const DecompositionState& state, Fingerprinter& fp, Colouring colour = {});

  const DecompositionState& state() const { return *state_; }
  ClassRegistry& registry() { return registry_; }
  const IsoStats& stats() const { return stats_; }

  // iso2 layer
  bool x_iso2(const RecolouredContext& x, const RecolouredContext& xstar);
  int sibling_iso_count(int block, int pair_node, int parent, int child, const std::map<Vertex, int>& recolour = {});
  bool iso2_query(Vertex a, Vertex b, Vertex astar, Vertex bstar);
  // Class of a whole block under `colour`.
  int block_class(int block, const Colouring& colour);

  // iso1 layer
  struct BCContext {
    int root = -1;  // node of state().bc_forest()
    int parent = -1;
    int hole = -1;
    std::map<Vertex, int> recolour;
  };
  // Colours of the col-graph of a block seen from parent cut `parent_cut` (-1 at a root block):
  // cut vertices below carry their subtree classes, the parent cut a marker colour.
  Colouring colour_cut_vertices(int block, Vertex parent_cut, const Colouring& base);
  bool x_iso1(const BCContext& x, const BCContext& xstar);
  bool iso1_query(Vertex a, Vertex astar);
  bool components_isomorphic(Vertex u, Vertex v);
  // Unrooted class of the connected component of v.
  int component_class(Vertex v, const Colouring& colour);

 private:
  struct TriView;
  struct BCView;
  // Every derived colouring passes through the registry so raw and derived ids never clash.
  Colouring wrapped(const Colouring& raw);
  int marked(int tag, long base, long extra = 0);
  TriView tri_view(int block, Colouring colour, int hole);
  int tri_class(TriView& t, int node, int parent, Vertex first);
  int tri_root_class(TriView& t, int root);
  int block_class_wrapped(int block, const Colouring& colour);
  const BCTree& bc();
  int bc_class(BCView& t, int node, int parent);
  Colouring col_graph_colours(BCView& t, int node, int parent);
  int component_class_wrapped(Vertex v, const Colouring& colour);
  int state_block_of(int bc_block) const;
  void check_tri_context(const RecolouredContext& x) const;
  void check_bc_context(const BCContext& x);

  const DecompositionState* state_;
  Fingerprinter* fp_;
  Colouring colour_;
  ClassRegistry registry_;
  IsoStats stats_;
  std::optional<BCTree> bc_;
  std::vector<std::vector<int>> bc_adj_;
};

// Orients each pair of a tri-tree path: the vertex on the common face with the anchors and the
// previous oriented vertex comes first. Throws AmbiguousFace if not exactly one vertex qualifies.
std::vector<std::pair<Vertex, Vertex>> fix_pair_orientation(const DecompositionState& state, const CoherentPath& path,
                                                            std::pair<Vertex, Vertex> first);

}  // namespace dp
