#include <map>
#include <set>

#include "doctest.h"
#include "dynplanar/graph.hpp"
#include "dynplanar/oracle.hpp"
#include "helpers.hpp"

using namespace dp;
using dptest::make;

TEST_CASE("apply_change toggles one edge") {
  Graph g(3);
  Graph h = apply_change(g, {ChangeEvent::Kind::insert, Edge(0, 1)});
  CHECK(h.size() == 1);
  CHECK(h.has_edge(1, 0));

  Graph tri = dptest::cycle(3);
  Graph path = apply_change(tri, {ChangeEvent::Kind::remove, Edge(0, 1)});
  CHECK(path.edges() == std::vector<Edge>{Edge(0, 2), Edge(1, 2)});
  CHECK_THROWS_AS(apply_change(tri, {ChangeEvent::Kind::insert, Edge(0, 1)}), IllegalChange);
  CHECK_THROWS_AS(apply_change(g, {ChangeEvent::Kind::remove, Edge(0, 1)}), IllegalChange);
  CHECK_THROWS_AS(g.add_edge(2, 2), IllegalChange);
}

TEST_CASE("planarity predicate") {
  CHECK(is_planar(dptest::k4()));
  Graph k5(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.add_edge(i, j);
  CHECK_FALSE(is_planar(k5));
  Graph k33 = make(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  CHECK_FALSE(is_planar(k33));
  CHECK(is_planar(dptest::cube()));
}

TEST_CASE("Euler bound rejects dense graphs") {
  // 6 vertices, 13 edges > 3*6-6.
  Graph g(6);
  int added = 0;
  for (int i = 0; i < 6 && added < 13; ++i)
    for (int j = i + 1; j < 6 && added < 13; ++j, ++added) g.add_edge(i, j);
  CHECK_FALSE(is_planar(g));
}

TEST_CASE("is_planar agrees with the independent check on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    Graph g(n);
    int m = static_cast<int>(rng() % static_cast<unsigned>(3 * n));
    for (int i = 0; i < m; ++i) {
      Vertex a = static_cast<Vertex>(rng() % static_cast<unsigned>(n)), b = static_cast<Vertex>(rng() % static_cast<unsigned>(n));
      if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
    }
    CHECK(is_planar(g) == oracle::oracle_is_planar(g));
  }
}

TEST_CASE("embed_3connected face structure") {
  auto k4 = embed_3connected(dptest::k4(), CombFace{{0, 1, 2}});
  CHECK(k4.faces.size() == 4);
  for (const auto& f : k4.faces) CHECK(f.cycle.size() == 3);
  CHECK(k4.outer == CombFace{{0, 1, 2}});

  auto pr = embed_3connected(dptest::prism(), CombFace{{1, 2, 5, 4}});
  int tri = 0, sq = 0;
  for (const auto& f : pr.faces) (f.cycle.size() == 3 ? tri : sq) += 1;
  CHECK(tri == 2);
  CHECK(sq == 3);

  auto cu = embed_3connected(dptest::cube(), CombFace{{0, 1, 2, 3}});
  CHECK(cu.faces.size() == 6);
  for (const auto& f : cu.faces) CHECK(f.cycle.size() == 4);

  CHECK_THROWS_AS(embed_3connected(dptest::prism(), CombFace{{1, 2, 3, 6}}), NotAFace);
  CHECK_THROWS_AS(embed_3connected(dptest::cycle(5), CombFace{{0, 1, 2, 3, 4}}), Not3Connected);
}

TEST_CASE("embeddings satisfy Euler and re-embed to the same face set") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = dptest::random_3connected(rng, 4 + static_cast<int>(rng() % 9));
    auto emb = embed_3connected(g);
    int v = static_cast<int>(g.active_vertices().size());
    CHECK(v - g.size() + static_cast<int>(emb.faces.size()) == 2);
    std::map<Edge, int> on;
    std::set<std::pair<Vertex, Vertex>> directed;
    for (const auto& f : emb.faces)
      for (std::size_t i = 0; i < f.cycle.size(); ++i) {
        Vertex a = f.cycle[i], b = f.cycle[(i + 1) % f.cycle.size()];
        CHECK(g.has_edge(a, b));
        ++on[Edge(a, b)];
        CHECK(directed.insert({a, b}).second);
      }
    for (const auto& e : g.edges()) CHECK(on[e] == 2);
    for (const auto& f : emb.faces) {
      auto again = embed_3connected(g, f);
      CHECK(again.faces == emb.faces);
      auto flipped = embed_3connected(g, f.reversed());
      CHECK(flipped.faces.size() == emb.faces.size());
    }
  }
}
