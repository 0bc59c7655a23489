#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dynplanar/iso.hpp"
#include "dynplanar/oracle.hpp"
#include "helpers.hpp"

using namespace dp;
using dptest::make;

namespace {

std::vector<Vertex> range(int lo, int hi) {
  std::vector<Vertex> v(static_cast<std::size_t>(hi - lo));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Copy of g on vertices shifted by `offset` and permuted by perm (indexed by original id).
Graph disjoint_copy(const Graph& g, int offset, const std::vector<Vertex>& perm, int universe) {
  Graph out(universe);
  for (const Edge& e : g.edges()) {
    out.add_edge(e.lo, e.hi);
    out.add_edge(offset + perm[static_cast<std::size_t>(e.lo)], offset + perm[static_cast<std::size_t>(e.hi)]);
  }
  return out;
}

LabelledComponent component_of_3conn(const Graph& g) { return plain_component(g, false); }

bool oracle_component_iso(const Graph& g, Vertex u, Vertex v) {
  return oracle::oracle_iso(g, component_of(g, u), g, component_of(g, v)).has_value();
}

}  // namespace

// ---- iso3 ----

TEST_CASE("verify_iso examples") {
  Graph path = make(3, {{0, 1}, {1, 2}});
  CHECK(verify_iso(path, path, Matching{{{0, 0}, {1, 1}, {2, 2}}}));
  CHECK_FALSE(verify_iso(path, path, Matching{{{0, 1}, {1, 0}, {2, 2}}}));
  CHECK(verify_iso(path, path, Matching{{{0, 2}, {1, 1}, {2, 0}}}));
}

TEST_CASE("iso3_query examples") {
  Fingerprinter fp;
  auto k4 = component_of_3conn(dptest::k4());
  Matching w;
  CHECK(iso3_query(fp, k4, k4, {{{0, 0}, {1, 1}, {2, 2}, {3, 3}}}, &w));
  CHECK(w.verified);
  CHECK(verify_iso(k4.graph, k4.graph, w));

  auto c5 = plain_component(dptest::cycle(5), true);
  // Rotation by one: 0->1, 1->2, 2->3, 3->4.
  CHECK(iso3_query(fp, c5, c5, {{{0, 1}, {1, 2}, {2, 3}, {3, 4}}}));
  // Reflection is also a cycle automorphism.
  CHECK(iso3_query(fp, c5, c5, {{{0, 0}, {1, 4}, {2, 3}, {3, 2}}}));
  // Distances not preserved.
  CHECK_FALSE(iso3_query(fp, c5, c5, {{{0, 0}, {1, 2}, {2, 4}, {3, 1}}}));

  auto prism = component_of_3conn(dptest::prism());
  CHECK_FALSE(iso3_query(fp, prism, k4, {}));
  CHECK_FALSE(iso3_query(fp, c5, k4, {}));

  // Reflection of the prism swapping the two triangles: 1<->4, 2<->5, 3<->6.
  Matching m;
  REQUIRE(iso3_query(fp, prism, prism, {{{1, 4}, {2, 5}, {3, 6}, {4, 1}}}, &m));
  CHECK(verify_iso(prism.graph, prism.graph, m));
  CHECK(oracle::oracle_iso(prism.graph, range(1, 7), prism.graph, range(1, 7), {{1, 4}, {2, 5}, {3, 6}, {4, 1}})
            .has_value());
  // Mirror within a triangle: 1 fixed, 2<->3, so 4 fixed.
  CHECK(iso3_query(fp, prism, prism, {{{1, 1}, {2, 3}, {3, 2}, {4, 4}}}));
  CHECK_FALSE(iso3_query(fp, prism, prism, {{{1, 1}, {2, 3}, {3, 2}, {4, 5}}}));
}

TEST_CASE("extract_matching examples") {
  Fingerprinter fp;
  Graph k4 = dptest::k4(1, 5);  // vertices 1..4
  auto id = extract_matching(fp, k4, {1, 2, 3}, k4, {1, 2, 3});
  REQUIRE(id.has_value());
  for (auto [x, y] : id->pairs) CHECK(x == y);
  auto shifted = extract_matching(fp, k4, {1, 2, 3}, k4, {2, 3, 4});
  REQUIRE(shifted.has_value());
  CHECK(shifted->image(1) == 2);
  CHECK(shifted->image(2) == 3);
  CHECK(shifted->image(3) == 4);
  CHECK(shifted->image(4) == 1);
  CHECK(verify_iso(k4, k4, *shifted));
  CHECK_FALSE(extract_matching(fp, k4, {1, 2, 3}, dptest::prism(), {1, 2, 3}).has_value());
}

TEST_CASE("face flags cover every directed edge twice") {
  Graph prism = dptest::prism();
  CHECK(face_flags(prism).size() == 4 * static_cast<std::size_t>(prism.size()));
}

TEST_CASE("iso3 agrees with the oracle on random 3-connected pairs") {
  std::mt19937_64 rng(31);
  Fingerprinter fp;
  int agree = 0, positives = 0;
  for (int t = 0; t < 120; ++t) {
    const int n = 4 + static_cast<int>(rng() % 6);
    Graph g = dptest::random_3connected(rng, n, n, 0.6);
    // Half the time c* is a relabelled copy, otherwise an independent graph of the same order.
    Graph h(n);
    std::vector<Vertex> perm = range(0, n);
    std::shuffle(perm.begin(), perm.end(), rng);
    if (t % 2 == 0) {
      for (const Edge& e : g.edges()) h.add_edge(perm[static_cast<std::size_t>(e.lo)], perm[static_cast<std::size_t>(e.hi)]);
    } else {
      h = dptest::random_3connected(rng, n, n, 0.6);
    }
    Iso3Query q;
    std::vector<Vertex> vs = range(0, n);
    std::shuffle(vs.begin(), vs.end(), rng);
    const std::size_t fixed = rng() % 4;
    for (std::size_t i = 0; i < fixed; ++i)
      q.fixed.emplace_back(vs[i], rng() % 3 == 0 ? static_cast<Vertex>(rng() % static_cast<unsigned>(n))
                                                  : perm[static_cast<std::size_t>(vs[i])]);
    auto c = component_of_3conn(g), cs = component_of_3conn(h);
    Matching m;
    const bool got = iso3_query(fp, c, cs, q, &m);
    const bool want = oracle::oracle_iso(g, range(0, n), h, range(0, n), q.fixed).has_value();
    CHECK(got == want);
    if (got) {
      CHECK(verify_iso(g, h, m));
      ++positives;
    }
    agree += got == want;
    // Symmetric.
    Iso3Query back;
    for (auto [x, y] : q.fixed) back.fixed.emplace_back(y, x);
    CHECK(iso3_query(fp, cs, c, back) == got);
  }
  CHECK(agree == 120);
  CHECK(positives > 20);
}

TEST_CASE("iso3 respects colours and labels") {
  Fingerprinter fp;
  auto a = component_of_3conn(dptest::prism());
  auto b = a;
  a.colour.assign(7, 0);
  b.colour.assign(7, 0);
  a.colour[1] = 5;
  b.colour[4] = 5;
  CHECK(iso3_query(fp, a, b, {}));
  b.colour[4] = 6;
  CHECK_FALSE(iso3_query(fp, a, b, {}));
  b.colour[4] = 5;
  a.labels[{2, 3}] = 9;
  b.labels[{5, 6}] = 9;
  CHECK(iso3_query(fp, a, b, {}));
  b.labels.clear();
  b.labels[{6, 5}] = 9;
  // Label on the reversed direction only matches under a reflection that also fixes colours.
  CHECK(iso3_query(fp, a, b, {}) ==
        match_exact(a, b, std::span<const std::pair<Vertex, Vertex>>{}).has_value());
}

TEST_CASE("iso3 answers survive a pool refresh") {
  std::mt19937_64 rng(5);
  PoolConfig cfg;
  cfg.seed = 11;
  Fingerprinter fp(cfg);
  std::vector<std::pair<LabelledComponent, LabelledComponent>> cases;
  std::vector<bool> before;
  for (int t = 0; t < 30; ++t) {
    const int n = 5 + static_cast<int>(rng() % 4);
    auto g = component_of_3conn(dptest::random_3connected(rng, n, n, 0.5));
    auto h = component_of_3conn(t % 2 ? g.graph : dptest::random_3connected(rng, n, n, 0.5));
    cases.emplace_back(g, h);
    before.push_back(iso3_query(fp, g, h, {}));
  }
  auto primes_before = fp.primes();
  Fingerprinter fresh(PoolConfig{8, 4, std::uint64_t{1} << 20, std::uint64_t{1} << 21, 999});
  CHECK(fresh.primes() != primes_before);
  for (std::size_t i = 0; i < cases.size(); ++i) CHECK(iso3_query(fresh, cases[i].first, cases[i].second, {}) == before[i]);
}

// ---- iso2 ----

namespace {

int pair_node(const TriTree& t, Edge p) { return static_cast<int>(t.components.size()) + t.pair_index(p); }

}  // namespace

TEST_CASE("x_iso2 examples") {
  Fingerprinter fp;
  // Two disjoint triangles.
  Graph g = make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto state = build_decomposition(g);
  REQUIRE(state.blocks.size() == 2);
  IsoSession s(state, fp);
  RecolouredContext x{0, 0, -1, -1, false, {}};
  RecolouredContext y{1, 0, -1, -1, false, {}};
  CHECK(s.x_iso2(x, x));
  CHECK(s.x_iso2(x, y));
  x.recolour[0] = 3;
  CHECK_FALSE(s.x_iso2(x, y));
  y.recolour[4] = 3;
  CHECK(s.x_iso2(x, y));
  y.recolour = {{0, 3}};
  CHECK_THROWS_AS(s.x_iso2(x, y), InvalidContext);
}

TEST_CASE("x_iso2 on C4 plus chord agrees with the coloured oracle") {
  Fingerprinter fp;
  // Two copies of C4 + chord: 0-1-2-3 chord 0-2, and 4-5-6-7 chord 4-6.
  Graph g = make(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {4, 6}});
  auto state = build_decomposition(g);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    Colouring col(8);
    for (auto& c : col) c = static_cast<int>(rng() % 2);
    IsoSession s(state, fp, col);
    const auto& t0 = *state.blocks[0].tri;
    const auto& t1 = *state.blocks[1].tri;
    RecolouredContext x{0, pair_node(t0, {0, 2}), -1, -1, false, {}};
    for (bool swap : {false, true}) {
      RecolouredContext y{1, pair_node(t1, {4, 6}), -1, -1, swap, {}};
      const Vertex y_first = swap ? 6 : 4, y_second = swap ? 4 : 6;
      const bool want =
          oracle::oracle_iso(g, range(0, 4), g, range(4, 8), {{0, y_first}, {2, y_second}}, col, col).has_value();
      CHECK(s.x_iso2(x, y) == want);
    }
  }
}

TEST_CASE("sibling_iso_count examples") {
  Fingerprinter fp;
  // Pair {0,1} with children: triangle via 2, triangle via 3, square via 4-5.
  Graph g = make(6, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}});
  auto state = build_decomposition(g);
  REQUIRE(state.blocks.size() == 1);
  const auto& t = *state.blocks[0].tri;
  const int p = pair_node(t, {0, 1});
  REQUIRE(p >= static_cast<int>(t.components.size()));
  IsoSession s(state, fp);
  const auto adj = t.adjacency();
  std::vector<int> counts;
  for (int ch : adj[static_cast<std::size_t>(p)]) counts.push_back(s.sibling_iso_count(0, p, -1, ch));
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{0, 1, 1});
  // Recolouring a pair vertex keeps the two triangles alike.
  for (int ch : adj[static_cast<std::size_t>(p)])
    if (t.components[static_cast<std::size_t>(ch)].vertices.size() == 4) CHECK(s.sibling_iso_count(0, p, -1, ch, {{0, 7}}) == 0);

  // Unique child: C4 + chord seen from one triangle.
  Graph h = make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto hs = build_decomposition(h);
  IsoSession s2(hs, fp);
  const auto& th = *hs.blocks[0].tri;
  const int ph = pair_node(th, {0, 2});
  CHECK(s2.sibling_iso_count(0, ph, 0, 1) == 0);
}

TEST_CASE("fix_pair_orientation on the prism") {
  Graph g = dptest::prism();
  g.remove_edge(1, 4);
  auto state = build_decomposition(g);
  const auto& t = *state.blocks[0].tri;
  auto c1 = t.components[static_cast<std::size_t>(t.components_with(1)[0])];
  auto c2 = t.components[static_cast<std::size_t>(t.components_with(4)[0])];
  auto path = coherent_path(state, c1, c2, 1, 4);
  REQUIRE(path.has_value());
  auto o = fix_pair_orientation(state, *path, {2, 3});
  CHECK(o == std::vector<std::pair<Vertex, Vertex>>{{2, 3}, {5, 6}});
  auto r = fix_pair_orientation(state, *path, {3, 2});
  CHECK(r == std::vector<std::pair<Vertex, Vertex>>{{3, 2}, {6, 5}});

  // Single pair: the end orientation comes back unchanged.
  Graph h = make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto hs = build_decomposition(h);
  const auto& th = *hs.blocks[0].tri;
  auto p1 = coherent_path(hs, th.components[0], th.components[1], 1, 3);
  REQUIRE(p1.has_value());
  CHECK(fix_pair_orientation(hs, *p1, {2, 0}) == std::vector<std::pair<Vertex, Vertex>>{{2, 0}});
}

TEST_CASE("iso2_query examples") {
  Fingerprinter fp;
  Graph g = make(12, {});
  for (int i = 0; i < 6; ++i) {
    g.add_edge(i, (i + 1) % 6);
    g.add_edge(6 + i, 6 + (i + 1) % 6);
  }
  auto state = build_decomposition(g);
  IsoSession s(state, fp);
  CHECK(s.iso2_query(0, 1, 0, 1));
  CHECK(s.iso2_query(0, 2, 7, 9));
  CHECK(s.iso2_query(0, 3, 11, 8));
  CHECK_FALSE(s.iso2_query(0, 2, 7, 10));
  CHECK_THROWS_AS(s.iso2_query(0, 7, 1, 2), NotBiconnectedPair);
}

namespace {

// Biconnected planar graph on vertices [offset, offset + n): a cycle plus random chords.
void add_biconnected(std::mt19937_64& rng, Graph& g, int offset, int n, int chords) {
  for (int i = 0; i < n; ++i) g.add_edge(offset + i, offset + (i + 1) % n);
  for (int k = 0; k < chords; ++k) {
    Vertex a = offset + static_cast<Vertex>(rng() % static_cast<unsigned>(n));
    Vertex b = offset + static_cast<Vertex>(rng() % static_cast<unsigned>(n));
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(a, b);
    if (!is_planar(g)) g.remove_edge(a, b);
  }
}

}  // namespace

TEST_CASE("iso2_query agrees with the coloured oracle") {
  std::mt19937_64 rng(77);
  Fingerprinter fp;
  int positives = 0;
  for (int t = 0; t < 150; ++t) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Graph g(2 * n);
    add_biconnected(rng, g, 0, n, 4);
    std::vector<Vertex> perm = range(0, n);
    std::shuffle(perm.begin(), perm.end(), rng);
    if (t % 3 == 0) {
      add_biconnected(rng, g, n, n, 4);
    } else {
      for (const Edge& e : g.edges())
        if (e.hi < n) g.add_edge(n + perm[static_cast<std::size_t>(e.lo)], n + perm[static_cast<std::size_t>(e.hi)]);
    }
    Colouring col(static_cast<std::size_t>(2 * n));
    for (int v = 0; v < n; ++v) {
      col[static_cast<std::size_t>(v)] = static_cast<int>(rng() % 2);
      col[static_cast<std::size_t>(n + perm[static_cast<std::size_t>(v)])] =
          rng() % 5 == 0 ? static_cast<int>(rng() % 2) : col[static_cast<std::size_t>(v)];
    }
    auto state = build_decomposition(g);
    IsoSession s(state, fp, col);
    const Vertex a = static_cast<Vertex>(rng() % static_cast<unsigned>(n));
    Vertex b = static_cast<Vertex>(rng() % static_cast<unsigned>(n));
    if (b == a) b = (a + 1) % n;
    const Vertex as = n + (rng() % 2 ? perm[static_cast<std::size_t>(a)] : static_cast<Vertex>(rng() % static_cast<unsigned>(n)));
    Vertex bs = n + perm[static_cast<std::size_t>(b)];
    if (bs == as) bs = n + (bs - n + 1) % n;
    const bool got = s.iso2_query(a, b, as, bs);
    const bool want = oracle::oracle_iso(g, range(0, n), g, range(n, 2 * n), {{a, as}, {b, bs}}, col, col).has_value();
    CHECK(got == want);
    positives += got;
  }
  CHECK(positives > 15);
}

// ---- iso1 ----

TEST_CASE("colour_cut_vertices examples") {
  Fingerprinter fp;
  // Star centred at 0.
  Graph star = make(4, {{0, 1}, {0, 2}, {0, 3}});
  auto ss = build_decomposition(star);
  IsoSession s(ss, fp);
  std::vector<int> leaf_colours;
  for (int b = 0; b < 3; ++b) {
    auto col = s.colour_cut_vertices(b, 0, {});
    const Vertex leaf = ss.blocks[static_cast<std::size_t>(b)].vertices.back();
    leaf_colours.push_back(col[static_cast<std::size_t>(leaf)]);
    CHECK(col[0] != col[static_cast<std::size_t>(leaf)]);
  }
  CHECK(leaf_colours[0] == leaf_colours[1]);
  CHECK(leaf_colours[1] == leaf_colours[2]);

  // Triangle 0-1-2 with limbs at 1 and 2.
  Graph cat = make(7, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {3, 4}, {2, 5}, {5, 6}});
  auto cs = build_decomposition(cat);
  IsoSession s2(cs, fp);
  const int tri = cs.block_containing(0, 1);
  auto col = s2.colour_cut_vertices(tri, -1, {});
  CHECK(col[1] == col[2]);
  CHECK(col[0] != col[1]);
  Graph uneven = cat;
  uneven.remove_edge(5, 6);
  auto us = build_decomposition(uneven);
  IsoSession s3(us, fp);
  auto col2 = s3.colour_cut_vertices(us.block_containing(0, 1), -1, {});
  CHECK(col2[1] != col2[2]);
  // Recolouring below changes the class exactly where the subtree differs.
  Colouring base(7);
  base[4] = 1;
  auto col3 = s2.colour_cut_vertices(tri, -1, base);
  CHECK(col3[1] != col3[2]);
  base[6] = 1;
  auto col4 = s2.colour_cut_vertices(tri, -1, base);
  CHECK(col4[1] == col4[2]);
}

TEST_CASE("x_iso1 examples") {
  Fingerprinter fp;
  Graph p3 = make(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  auto st = build_decomposition(p3);
  IsoSession s(st, fp);
  const BCTree bc = st.bc_forest();
  IsoSession::BCContext mid{bc.cut_node(1), -1, -1, {}};
  IsoSession::BCContext mid2{bc.cut_node(4), -1, -1, {}};
  CHECK(s.x_iso1(mid, mid));
  CHECK(s.x_iso1(mid, mid2));
  // Rooted at an end block (seen from nothing) vs at the middle cut vertex.
  IsoSession::BCContext end{bc.node_of(0), -1, -1, {}};
  CHECK_FALSE(s.x_iso1(end, mid2));
  mid.recolour[1] = 4;
  CHECK_FALSE(s.x_iso1(mid, mid2));
  mid2.recolour[4] = 4;
  CHECK(s.x_iso1(mid, mid2));
}

TEST_CASE("iso1_query and components_isomorphic examples") {
  Fingerprinter fp;
  Graph g = make(9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {6, 8}});
  auto st = build_decomposition(g);
  IsoSession s(st, fp);
  CHECK(s.iso1_query(0, 0));
  CHECK(s.iso1_query(1, 4));
  CHECK_FALSE(s.iso1_query(1, 3));
  CHECK(s.iso1_query(0, 5));
  CHECK(s.components_isomorphic(0, 3));
  CHECK_FALSE(s.components_isomorphic(0, 6));
  Graph two = make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto ts = build_decomposition(two);
  IsoSession s2(ts, fp);
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 3; v < 6; ++v) CHECK(s2.components_isomorphic(u, v));
}

TEST_CASE("components_isomorphic on shuffled copies and random graphs") {
  std::mt19937_64 rng(123);
  Fingerprinter fp;
  for (int t = 0; t < 120; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    Graph base = dptest::random_planar(rng, n, 3 * n);
    std::vector<Vertex> perm = range(0, n);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph g = disjoint_copy(base, n, perm, 2 * n);
    auto st = build_decomposition(g);
    IsoSession s(st, fp);
    for (Vertex u = 0; u < n; ++u) {
      CHECK(s.iso1_query(u, n + perm[static_cast<std::size_t>(u)]));
      const Vertex v = n + static_cast<Vertex>(rng() % static_cast<unsigned>(n));
      CHECK(s.components_isomorphic(u, v) == oracle_component_iso(g, u, v));
      const bool want = oracle::oracle_iso(g, component_of(g, u), g, component_of(g, v), {{u, v}}).has_value();
      CHECK(s.iso1_query(u, v) == want);
    }
  }
  for (int t = 0; t < 200; ++t) {
    Graph g = dptest::random_planar(rng, 12, 4 + static_cast<int>(rng() % 14));
    auto st = build_decomposition(g);
    IsoSession s(st, fp);
    const Vertex u = static_cast<Vertex>(rng() % 12), v = static_cast<Vertex>(rng() % 12);
    CHECK(s.components_isomorphic(u, v) == oracle_component_iso(g, u, v));
  }
}

TEST_CASE("iso answers use the family bundles when live") {
  std::mt19937_64 rng(8);
  Graph g(10);
  Graph k = dptest::k4();
  for (const Edge& e : k.edges()) {
    g.add_edge(e.lo, e.hi);
    g.add_edge(e.lo + 4, e.hi + 4);
  }
  auto st = build_decomposition(g);
  BundleFamily family;
  family.sync(st);
  Fingerprinter fp(family);
  IsoSession s(st, fp);
  CHECK(s.components_isomorphic(0, 5));
  CHECK(s.iso1_query(0, 7));
  CHECK(fp.stats().queries >= 0);
}
