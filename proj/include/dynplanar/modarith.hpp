#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynplanar/decomp.hpp"
#include "dynplanar/graph.hpp"

namespace dp {

using Residue = std::uint64_t;

class NotInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class PoolTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parallel kernels use OpenMP; serial ones are the reference they are tested against.
enum class Exec { parallel, serial };

// ---- scalar arithmetic mod p (p < 2^63) ----

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % p);
}
Residue pow_mod(Residue a, Residue e, Residue p);
Residue inv_mod(Residue a, Residue p);  // throws NotInvertible for a == 0
Residue to_residue(std::int64_t v, Residue p);

// Deterministic Miller-Rabin, exact for 64-bit inputs.
bool is_prime(std::uint64_t n);

// All primes in [lo, hi), ascending, by a segmented sieve.
std::vector<std::uint64_t> primes_in_window(std::uint64_t lo, std::uint64_t hi);

// ---- dense matrices over Z_p ----

class ZpMatrix {
 public:
  ZpMatrix() = default;
  ZpMatrix(Residue p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {}

  static ZpMatrix identity(Residue p, int n);

  Residue modulus() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Residue& at(int r, int c) { return data_[idx(r, c)]; }
  Residue at(int r, int c) const { return data_[idx(r, c)]; }
  std::span<Residue> row(int r) { return {data_.data() + idx(r, 0), static_cast<std::size_t>(cols_)}; }
  std::span<const Residue> row(int r) const { return {data_.data() + idx(r, 0), static_cast<std::size_t>(cols_)}; }

  bool operator==(const ZpMatrix&) const = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  Residue p_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Residue> data_;
};

ZpMatrix multiply(const ZpMatrix& a, const ZpMatrix& b, Exec exec = Exec::parallel);
ZpMatrix invert_gauss(const ZpMatrix& m, Exec exec = Exec::parallel);

// ---- Tutte matrices and bundles ----

using Pins = std::array<Vertex, 3>;

// Sparse integer description of T: identity rows at pins, Laplacian rows elsewhere.
struct TutteMatrix {
  std::vector<Vertex> vertices;  // sorted; row/column order
  Pins pins{};
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows;

  int index_of(Vertex v) const;  // -1 if absent
  ZpMatrix dense(Residue p) const;
};

// Vertex order for a host: active vertices plus the pins.
std::vector<Vertex> host_vertices(const Graph& h, const Pins& pins);
TutteMatrix tutte_matrix(const Graph& h, const Pins& pins);

struct TutteBundle {
  Graph host;
  std::vector<Vertex> vertices;
  Pins pins{};
  Residue p = 0;
  ZpMatrix tinv;
  ZpMatrix col_l;  // Tinv * L, column j is Tinv times Laplacian column j
  ZpMatrix row_l;  // L * Tinv
  ZpMatrix bilin;  // L * Tinv * L

  int index_of(Vertex v) const;
  // Host compared by edge set, so hosts over different universes can match.
  bool operator==(const TutteBundle& o) const;
};

TutteBundle bundle_init(const Graph& h, const Pins& pins, Residue p, Exec exec = Exec::parallel);

// T * Tinv == I and the three products agree with direct recomputation.
bool bundle_consistent(const TutteBundle& b);

enum class EdgeDir { insert, remove };
enum class VertexDir { add, remove };

TutteBundle smw_edge(const TutteBundle& b, Edge e, EdgeDir dir, Exec exec = Exec::parallel);
TutteBundle smw_pins(const TutteBundle& b, const Pins& new_pins, Exec exec = Exec::parallel);

// b1 pinned (s1, s2, x), b2 pinned (s1, s2, y), hosts sharing exactly {s1, s2}.
// Result: union plus edge xy, pinned (s1, x, y).
TutteBundle smw_merge(const TutteBundle& b1, const TutteBundle& b2, Edge shared, Edge bridge,
                      Exec exec = Exec::parallel);
// b pinned (s1, x, y) on H1 u H2 + xy. Returns bundles on H1 pinned (s1, s2, x) and H2 pinned (s1, s2, y).
std::pair<TutteBundle, TutteBundle> smw_split(const TutteBundle& b, const VertexSet& side1, const VertexSet& side2,
                                              Edge shared, Edge bridge, Exec exec = Exec::parallel);

// b1 pinned (v1, v2, v3), b2 pinned (v4, v5, v6), disjoint hosts; adds v1v4, v2v5, v3v6.
// Result pinned (v1, v4, v6).
TutteBundle smw_union(const TutteBundle& b1, const TutteBundle& b2, Exec exec = Exec::parallel);

// add: b pinned (a1, a2, a3), v fresh, edges v-a1, v-a2, v-a3; result pinned (a1, a3, v).
// remove: b pinned (a1, a3, v), v has exactly those edges; result pinned (a1, a2, a3).
TutteBundle smw_vertex(const TutteBundle& b, Vertex v, const std::array<Vertex, 3>& attach, VertexDir dir,
                       Exec exec = Exec::parallel);

// add: b pinned (a1, a2, a3), a1..a4 an induced 4-cycle in that order; new v ~ a1, a2, v' ~ a3, a4, v ~ v'.
// Result pinned (a_m, v, v') for m = keep (0..2).
// remove: b pinned (a_m, v, v'); result pinned (a1, a2, a3).
TutteBundle smw_pair(const TutteBundle& b, Vertex v, Vertex v2, const std::array<Vertex, 4>& attach, VertexDir dir,
                     int keep = 0, Exec exec = Exec::parallel);

// Test-only fault: flips the sign of the edge update term in smw_edge.
void set_smw_fault(bool on);
bool smw_fault();

// ---- coordinates ----

struct Coords {
  Residue p = 0;
  std::vector<Vertex> vertices;
  std::vector<Residue> x, y;

  std::pair<Residue, Residue> at(Vertex v) const;
};

// Pins placed at (0,0), (1,0), (0,1).
Coords embed_coords(const TutteBundle& b);
// Pin positions given as residues.
Coords embed_coords(const TutteBundle& b, const std::array<std::pair<Residue, Residue>, 3>& positions);

// Equal iff coordinates agree under `pairing` for every prime; the prime lists must coincide.
bool crt_compare(std::span<const Coords> a, std::span<const Coords> b,
                 std::span<const std::pair<Vertex, Vertex>> pairing, std::size_t min_primes = 1);

// ---- prime pool and bundle family ----

struct PoolConfig {
  int size = 8;
  int low_water = 4;
  std::uint64_t window_lo = std::uint64_t{1} << 20;
  std::uint64_t window_hi = std::uint64_t{1} << 21;
  std::uint64_t seed = 0;
};

class PrimePool {
 public:
  explicit PrimePool(PoolConfig cfg = {});

  const std::vector<Residue>& live() const { return live_; }
  const PoolConfig& config() const { return cfg_; }
  bool below_low_water() const { return static_cast<int>(live_.size()) < cfg_.low_water; }
  void drop(Residue p);
  // Tops the pool back up to its target size with primes never used before; returns the new ones.
  std::vector<Residue> refresh();
  // Next never-used prime from the window; adopt() makes one live.
  Residue next_fresh();
  void adopt(Residue p) { live_.push_back(p); }
  int refresh_count() const { return refreshes_; }
  int drop_count() const { return drops_; }

 private:
  PoolConfig cfg_;
  std::vector<std::uint64_t> window_;
  std::size_t cursor_ = 0;
  std::size_t issued_ = 0;
  std::vector<Residue> live_;
  int refreshes_ = 0;
  int drops_ = 0;
};

struct FamilyCounters {
  long inits = 0;
  long smw_ops = 0;
  long fast_merges = 0;
  long fast_splits = 0;
};

// Bundles for every 3-connected component of a decomposition, one per live prime, kept at canonical pins.
class BundleFamily {
 public:
  explicit BundleFamily(PoolConfig cfg = {}, Exec exec = Exec::parallel);

  // Rebuilds every host from scratch.
  void sync(const DecompositionState& state);
  // Brings bundles from `before` to `after` (after = update_decomposition(before, e, t)).
  void coherent_update(const DecompositionState& before, const DecompositionState& after, const ChangeEvent& e,
                       const ChangeType& t);
  // Drops p for all hosts and refreshes if the pool falls below low water.
  void drop_prime(Residue p);
  void refresh();

  const PrimePool& pool() const { return pool_; }
  const FamilyCounters& counters() const { return counters_; }
  const std::map<VertexSet, std::vector<TutteBundle>>& hosts() const { return hosts_; }
  // Bundles of one host, parallel to pool().live(); nullptr if the host is not live.
  const std::vector<TutteBundle>* bundles(const VertexSet& host) const;

 private:
  struct HostSpec {
    Graph graph;
    Pins pins;
  };
  using Staged = std::vector<std::optional<TutteBundle>>;

  static std::map<VertexSet, HostSpec> live_hosts(const DecompositionState& state);
  Staged init_all(const HostSpec& spec);
  // Runs op(i) for every live prime index; NotInvertible leaves that slot empty.
  template <typename Op>
  Staged per_prime(Op&& op);
  std::optional<Staged> fast_merge(const DecompositionState& before, const VertexSet& key, const HostSpec& spec,
                                   Edge e);
  std::optional<Staged> fast_split(const DecompositionState& after, const VertexSet& old_key, Edge e,
                                   const std::map<VertexSet, HostSpec>& specs, std::map<VertexSet, Staged>& staged);
  Staged edge_diff(const VertexSet& key, const HostSpec& spec);
  void settle(std::map<VertexSet, Staged> staged, std::map<VertexSet, HostSpec> specs);

  PrimePool pool_;
  Exec exec_;
  std::map<VertexSet, std::vector<TutteBundle>> hosts_;
  std::map<VertexSet, HostSpec> specs_;
  FamilyCounters counters_;
};

// Canonical pins of a 3-connected host: first three vertices of its canonical outer face.
Pins canonical_pins(const Graph& host);

}  // namespace dp
