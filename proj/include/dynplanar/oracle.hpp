#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "dynplanar/graph.hpp"

// Brute-force references. Nothing here calls into the decomposition, modular or iso code.
namespace dp::oracle {

using Rational = boost::multiprecision::cpp_rational;

class SizeLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Singular : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  int iso = 14;
  int spqr = 14;
  int tutte = 10;
};
const Limits& limits();
void set_limits(const Limits& l);

bool oracle_is_planar(const Graph& g);

// Isomorphism between g1[v1] and g2[v2] extending `fixed` and preserving colours (indexed by
// global vertex id; empty means uncoloured). Returns the vertex pairs of one isomorphism.
std::optional<std::vector<std::pair<Vertex, Vertex>>> oracle_iso(
    const Graph& g1, const std::vector<Vertex>& v1, const Graph& g2, const std::vector<Vertex>& v2,
    const std::vector<std::pair<Vertex, Vertex>>& fixed = {}, const std::vector<int>& colour1 = {},
    const std::vector<int>& colour2 = {});

bool oracle_kconn(const Graph& g, Vertex u, Vertex v, int k);

struct SpqrComponent {
  std::vector<Vertex> vertices;  // sorted
  bool cycle = false;
  std::vector<std::pair<Vertex, Vertex>> edges;  // real and virtual, lo < hi
};
struct SpqrTree {
  std::vector<SpqrComponent> components;  // sorted by vertex set
  std::vector<std::pair<Vertex, Vertex>> pairs;  // sorted
};
SpqrTree oracle_spqr(const Graph& biconnected);

// Exact Tutte coordinates for `vertices` (positions parallel to it); pins get `positions`.
std::vector<std::pair<Rational, Rational>> oracle_tutte_exact(const Graph& h, const std::vector<Vertex>& vertices,
                                                              const std::vector<Vertex>& pins,
                                                              const std::vector<std::pair<Rational, Rational>>& positions);

// Exact determinant of the Tutte matrix (test support).
Rational oracle_tutte_det(const Graph& h, const std::vector<Vertex>& vertices, const std::vector<Vertex>& pins);

}  // namespace dp::oracle
