#include <set>

#include "doctest.h"
#include "dynplanar/oracle.hpp"
#include "helpers.hpp"

using namespace dp;
using namespace dp::oracle;
using dptest::make;

namespace {
std::vector<Vertex> range(int a, int b) {
  std::vector<Vertex> v;
  for (int i = a; i < b; ++i) v.push_back(i);
  return v;
}
}  // namespace

TEST_CASE("oracle_iso basics") {
  Graph two_triangles = make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto m = oracle_iso(two_triangles, range(0, 3), two_triangles, range(3, 6));
  REQUIRE(m.has_value());
  CHECK(m->size() == 3);
  Graph p3 = make(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(oracle_iso(p3, range(0, 3), p3, range(3, 6)).has_value());
  Graph paths = make(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  CHECK(oracle_iso(paths, range(0, 3), paths, range(3, 6), {{1, 4}}).has_value());
  CHECK_FALSE(oracle_iso(paths, range(0, 3), paths, range(3, 6), {{1, 3}}).has_value());
}

TEST_CASE("oracle_iso is symmetric") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Graph g = dptest::random_planar(rng, 10, 12);
    auto a = oracle_iso(g, range(0, 5), g, range(5, 10));
    auto b = oracle_iso(g, range(5, 10), g, range(0, 5));
    CHECK(a.has_value() == b.has_value());
  }
}

TEST_CASE("oracle_kconn") {
  Graph c4 = dptest::cycle(4);
  CHECK(oracle_kconn(c4, 0, 2, 2));
  CHECK_FALSE(oracle_kconn(c4, 0, 2, 3));
  Graph k4 = dptest::k4();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK(oracle_kconn(k4, a, b, 3));
  Graph two = make(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(oracle_kconn(two, 0, 2, 1));
}

TEST_CASE("oracle_spqr examples") {
  CHECK(oracle_spqr(dptest::k4()).components.size() == 1);
  Graph c4c = make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto t = oracle_spqr(c4c);
  REQUIRE(t.components.size() == 2);
  CHECK(t.pairs == std::vector<std::pair<Vertex, Vertex>>{{0, 2}});
  CHECK(t.components[0].cycle);
  CHECK(t.components[1].cycle);

  Graph p = dptest::prism();
  p.remove_edge(1, 4);
  auto pt = oracle_spqr(p);
  CHECK(pt.components.size() == 3);
  CHECK(pt.pairs == std::vector<std::pair<Vertex, Vertex>>{{2, 3}, {5, 6}});
}

TEST_CASE("oracle_spqr components glue back to the block") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 80; ++t) {
    Graph g = dptest::random_planar(rng, 9, 14);
    if (!is_biconnected(g)) continue;
    ++checked;
    auto tree = oracle_spqr(g);
    std::set<std::pair<Vertex, Vertex>> real, virt;
    for (const auto& c : tree.components) {
      for (auto e : c.edges) {
        if (g.has_edge(e.first, e.second)) real.insert(e);
        else virt.insert(e);
      }
    }
    CHECK(static_cast<int>(real.size()) == g.size());
    for (auto e : virt) CHECK(std::binary_search(tree.pairs.begin(), tree.pairs.end(), e));
    for (const auto& c : tree.components) {
      Graph cg(g.order());
      for (auto e : c.edges) cg.add_edge(e.first, e.second);
      CHECK((c.cycle || is_3connected(cg)));
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("oracle_tutte_exact") {
  Graph k4 = make(5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  std::vector<std::pair<Rational, Rational>> pos{{0, 0}, {1, 0}, {0, 1}};
  auto xy = oracle_tutte_exact(k4, {1, 2, 3, 4}, {1, 2, 3}, pos);
  CHECK(xy[3].first == Rational(1, 3));
  CHECK(xy[3].second == Rational(1, 3));
  CHECK(xy[0] == pos[0]);
  Graph tri = make(3, {{0, 1}, {1, 2}, {0, 2}});
  auto pinned = oracle_tutte_exact(tri, {0, 1, 2}, {0, 1, 2}, pos);
  CHECK(pinned[1] == pos[1]);
}

TEST_CASE("exact Tutte denominators divide the determinant") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    Graph g = dptest::random_3connected(rng, 4 + static_cast<int>(rng() % 3));
    auto emb = embed_3connected(g);
    std::vector<Vertex> pins(emb.outer.cycle.begin(), emb.outer.cycle.begin() + 3);
    auto vs = g.active_vertices();
    auto det = oracle_tutte_det(g, vs, pins);
    REQUIRE(det != 0);
    auto xy = oracle_tutte_exact(g, vs, pins, {{0, 0}, {1, 0}, {0, 1}});
    for (auto& [x, y] : xy) {
      Rational qx = det / Rational(denominator(x));
      Rational qy = det / Rational(denominator(y));
      CHECK(denominator(qx) == 1);
      CHECK(denominator(qy) == 1);
    }
  }
}
