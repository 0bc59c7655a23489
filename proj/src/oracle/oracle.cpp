#include "dynplanar/oracle.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <map>
#include <set>

namespace dp::oracle {

namespace {

Limits g_limits;

using Matrix = std::vector<std::vector<char>>;

struct Local {
  std::vector<Vertex> ids;  // local -> global
  Matrix adj;
};

Local localize(const Graph& g, const std::vector<Vertex>& vs) {
  Local l;
  l.ids = vs;
  const std::size_t n = vs.size();
  l.adj.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.has_edge(vs[i], vs[j])) l.adj[i][j] = 1;
  return l;
}

// Reachability from s to t in adj avoiding `blocked`.
bool reaches(const Matrix& adj, int s, int t, const std::vector<char>& blocked) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> st{s};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!st.empty()) {
    int u = st.back();
    st.pop_back();
    if (u == t) return true;
    for (int v = 0; v < n; ++v)
      if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && !seen[static_cast<std::size_t>(v)] &&
          !blocked[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        st.push_back(v);
      }
  }
  return false;
}

int count_parts(const Matrix& adj, const std::vector<char>& in, const std::vector<char>& blocked) {
  const std::size_t n = adj.size();
  std::vector<char> seen(n, 0);
  int parts = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!in[s] || blocked[s] || seen[s]) continue;
    ++parts;
    std::vector<std::size_t> st{s};
    seen[s] = 1;
    while (!st.empty()) {
      auto u = st.back();
      st.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (adj[u][v] && in[v] && !blocked[v] && !seen[v]) {
          seen[v] = 1;
          st.push_back(v);
        }
    }
  }
  return parts;
}

// True if some set of fewer than `need` vertices (excluding x,y) separates x from y.
bool small_separator(const Matrix& adj, int x, int y, int need) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  if (!reaches(adj, x, y, blocked)) return true;
  if (need >= 2)
    for (int a = 0; a < n; ++a) {
      if (a == x || a == y) continue;
      blocked[static_cast<std::size_t>(a)] = 1;
      if (!reaches(adj, x, y, blocked)) return true;
      if (need >= 3)
        for (int b = a + 1; b < n; ++b) {
          if (b == x || b == y) continue;
          blocked[static_cast<std::size_t>(b)] = 1;
          bool r = reaches(adj, x, y, blocked);
          blocked[static_cast<std::size_t>(b)] = 0;
          if (!r) {
            blocked[static_cast<std::size_t>(a)] = 0;
            return true;
          }
        }
      blocked[static_cast<std::size_t>(a)] = 0;
    }
  return false;
}

bool co2(const Graph& g, Vertex u, Vertex v) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.order()));
  for (Vertex i = 0; i < g.order(); ++i) all[static_cast<std::size_t>(i)] = i;
  Local l = localize(g, all);
  std::vector<char> blocked(all.size(), 0);
  if (!reaches(l.adj, u, v, blocked)) return false;
  for (Vertex w = 0; w < g.order(); ++w) {
    if (w == u || w == v) continue;
    blocked[static_cast<std::size_t>(w)] = 1;
    bool r = reaches(l.adj, u, v, blocked);
    blocked[static_cast<std::size_t>(w)] = 0;
    if (!r) return false;
  }
  return true;
}

}  // namespace

const Limits& limits() { return g_limits; }
void set_limits(const Limits& l) { g_limits = l; }

bool oracle_is_planar(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(static_cast<std::size_t>(g.order()));
  for (const Edge& e : g.edges()) boost::add_edge(static_cast<std::size_t>(e.lo), static_cast<std::size_t>(e.hi), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

std::optional<std::vector<std::pair<Vertex, Vertex>>> oracle_iso(const Graph& g1, const std::vector<Vertex>& v1,
                                                                 const Graph& g2, const std::vector<Vertex>& v2,
                                                                 const std::vector<std::pair<Vertex, Vertex>>& fixed,
                                                                 const std::vector<int>& colour1,
                                                                 const std::vector<int>& colour2) {
  if (static_cast<int>(v1.size()) > g_limits.iso || static_cast<int>(v2.size()) > g_limits.iso)
    throw SizeLimit("oracle_iso size limit exceeded");
  if (v1.size() != v2.size()) return std::nullopt;
  const Local a = localize(g1, v1), b = localize(g2, v2);
  const int n = static_cast<int>(v1.size());
  auto col = [](const std::vector<int>& c, Vertex v) { return c.empty() ? 0 : c[static_cast<std::size_t>(v)]; };
  std::vector<int> deg_a(static_cast<std::size_t>(n), 0), deg_b(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      deg_a[static_cast<std::size_t>(i)] += a.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      deg_b[static_cast<std::size_t>(i)] += b.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  std::vector<int> forced(static_cast<std::size_t>(n), -1), forced_back(static_cast<std::size_t>(n), -1);
  auto local_of = [](const std::vector<Vertex>& ids, Vertex v) {
    auto it = std::find(ids.begin(), ids.end(), v);
    return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
  };
  for (const auto& [x, y] : fixed) {
    int i = local_of(v1, x), j = local_of(v2, y);
    if (i < 0 || j < 0) return std::nullopt;
    if ((forced[static_cast<std::size_t>(i)] >= 0 && forced[static_cast<std::size_t>(i)] != j) ||
        (forced_back[static_cast<std::size_t>(j)] >= 0 && forced_back[static_cast<std::size_t>(j)] != i))
      return std::nullopt;
    forced[static_cast<std::size_t>(i)] = j;
    forced_back[static_cast<std::size_t>(j)] = i;
  }
  // Forced vertices first, then by decreasing degree.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    bool fx = forced[static_cast<std::size_t>(x)] >= 0, fy = forced[static_cast<std::size_t>(y)] >= 0;
    if (fx != fy) return fx;
    return deg_a[static_cast<std::size_t>(x)] > deg_a[static_cast<std::size_t>(y)];
  });
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto ok = [&](int i, int j) {
    if (used[static_cast<std::size_t>(j)]) return false;
    if (forced[static_cast<std::size_t>(i)] >= 0 && forced[static_cast<std::size_t>(i)] != j) return false;
    if (forced_back[static_cast<std::size_t>(j)] >= 0 && forced_back[static_cast<std::size_t>(j)] != i) return false;
    if (deg_a[static_cast<std::size_t>(i)] != deg_b[static_cast<std::size_t>(j)]) return false;
    if (col(colour1, v1[static_cast<std::size_t>(i)]) != col(colour2, v2[static_cast<std::size_t>(j)])) return false;
    for (int k = 0; k < n; ++k) {
      int mk = map[static_cast<std::size_t>(k)];
      if (mk < 0) continue;
      if (a.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != b.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(mk)])
        return false;
    }
    return true;
  };
  std::vector<int> cursor(static_cast<std::size_t>(n) + 1, 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) break;
    int i = order[static_cast<std::size_t>(depth)];
    int& c = cursor[static_cast<std::size_t>(depth)];
    if (map[static_cast<std::size_t>(i)] >= 0) {
      used[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])] = 0;
      map[static_cast<std::size_t>(i)] = -1;
    }
    while (c < n && !ok(i, c)) ++c;
    if (c == n) {
      c = 0;
      --depth;
      continue;
    }
    map[static_cast<std::size_t>(i)] = c;
    used[static_cast<std::size_t>(c)] = 1;
    ++c;
    ++depth;
  }
  if (depth < 0) return std::nullopt;
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int i = 0; i < n; ++i)
    out.emplace_back(v1[static_cast<std::size_t>(i)], v2[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])]);
  return out;
}

bool oracle_kconn(const Graph& g, Vertex u, Vertex v, int k) {
  if (k <= 0) return true;
  if (u == v) return k <= 1 || g.degree(u) > 0;
  std::vector<Vertex> all(static_cast<std::size_t>(g.order()));
  for (Vertex i = 0; i < g.order(); ++i) all[static_cast<std::size_t>(i)] = i;
  Local l = localize(g, all);
  std::vector<char> none(all.size(), 0);
  if (!reaches(l.adj, u, v, none)) return false;
  if (k == 1) return true;
  if (!co2(g, u, v)) return false;
  if (k == 2) return true;
  std::vector<Vertex> block{u, v};
  for (Vertex w = 0; w < g.order(); ++w)
    if (w != u && w != v && co2(g, u, w) && co2(g, v, w)) block.push_back(w);
  if (block.size() < 4) return false;
  std::sort(block.begin(), block.end());
  Graph sub(g.order());
  for (Vertex x : block)
    for (Vertex y : block)
      if (x < y && g.has_edge(x, y)) sub.add_edge(x, y);
  SpqrTree t = oracle_spqr(sub);
  for (const auto& c : t.components)
    if (!c.cycle && c.vertices.size() >= 4 && std::binary_search(c.vertices.begin(), c.vertices.end(), u) &&
        std::binary_search(c.vertices.begin(), c.vertices.end(), v))
      return true;
  return false;
}

SpqrTree oracle_spqr(const Graph& b) {
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < b.order(); ++v)
    if (b.degree(v) > 0) vs.push_back(v);
  if (static_cast<int>(vs.size()) > g_limits.spqr) throw SizeLimit("oracle_spqr size limit exceeded");
  const Local l = localize(b, vs);
  const int n = static_cast<int>(vs.size());
  SpqrTree t;
  std::vector<std::pair<int, int>> local_pairs;
  std::vector<char> all_in(static_cast<std::size_t>(n), 1);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      std::vector<char> blocked(static_cast<std::size_t>(n), 0);
      blocked[static_cast<std::size_t>(x)] = blocked[static_cast<std::size_t>(y)] = 1;
      if (count_parts(l.adj, all_in, blocked) < 2) continue;
      Matrix h = l.adj;
      const bool adjacent = h[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      h[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = h[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = 0;
      if (small_separator(h, x, y, adjacent ? 2 : 3)) continue;
      local_pairs.emplace_back(x, y);
    }

  struct Piece {
    std::vector<char> in;
    Matrix adj;
  };
  std::vector<Piece> todo{{all_in, l.adj}};
  while (!todo.empty()) {
    Piece p = std::move(todo.back());
    todo.pop_back();
    bool done = true;
    for (auto [x, y] : local_pairs) {
      if (!p.in[static_cast<std::size_t>(x)] || !p.in[static_cast<std::size_t>(y)]) continue;
      std::vector<char> blocked(static_cast<std::size_t>(n), 0);
      blocked[static_cast<std::size_t>(x)] = blocked[static_cast<std::size_t>(y)] = 1;
      if (count_parts(p.adj, p.in, blocked) < 2) continue;
      // Label the parts and build one piece per part.
      std::vector<int> label(static_cast<std::size_t>(n), -1);
      int parts = 0;
      for (int s = 0; s < n; ++s) {
        if (!p.in[static_cast<std::size_t>(s)] || blocked[static_cast<std::size_t>(s)] || label[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> st{s};
        label[static_cast<std::size_t>(s)] = parts;
        while (!st.empty()) {
          int u = st.back();
          st.pop_back();
          for (int v = 0; v < n; ++v)
            if (p.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && p.in[static_cast<std::size_t>(v)] &&
                !blocked[static_cast<std::size_t>(v)] && label[static_cast<std::size_t>(v)] < 0) {
              label[static_cast<std::size_t>(v)] = parts;
              st.push_back(v);
            }
        }
        ++parts;
      }
      for (int part = 0; part < parts; ++part) {
        Piece q{std::vector<char>(static_cast<std::size_t>(n), 0), Matrix(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0))};
        for (int v = 0; v < n; ++v) q.in[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(v)] == part || v == x || v == y;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            if (q.in[static_cast<std::size_t>(u)] && q.in[static_cast<std::size_t>(v)]) q.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = p.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        q.adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = q.adj[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = 1;
        todo.push_back(std::move(q));
      }
      done = false;
      break;
    }
    if (!done) continue;
    SpqrComponent c;
    for (int v = 0; v < n; ++v)
      if (p.in[static_cast<std::size_t>(v)]) c.vertices.push_back(vs[static_cast<std::size_t>(v)]);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (p.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) c.edges.emplace_back(vs[static_cast<std::size_t>(u)], vs[static_cast<std::size_t>(v)]);
    c.cycle = c.edges.size() == c.vertices.size();
    t.components.push_back(std::move(c));
  }
  for (auto [x, y] : local_pairs) t.pairs.emplace_back(vs[static_cast<std::size_t>(x)], vs[static_cast<std::size_t>(y)]);
  std::sort(t.components.begin(), t.components.end(),
            [](const SpqrComponent& a, const SpqrComponent& b) { return a.vertices < b.vertices; });
  std::sort(t.pairs.begin(), t.pairs.end());
  return t;
}

namespace {

std::vector<std::vector<Rational>> tutte_rational(const Graph& h, const std::vector<Vertex>& vertices,
                                                  const std::vector<Vertex>& pins) {
  const std::size_t n = vertices.size();
  std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = vertices[i];
    if (std::find(pins.begin(), pins.end(), v) != pins.end()) {
      t[i][i] = 1;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && h.has_edge(v, vertices[j])) {
        t[i][j] = -1;
        t[i][i] += 1;
      }
  }
  return t;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> oracle_tutte_exact(const Graph& h, const std::vector<Vertex>& vertices,
                                                              const std::vector<Vertex>& pins,
                                                              const std::vector<std::pair<Rational, Rational>>& positions) {
  if (static_cast<int>(vertices.size()) > g_limits.tutte) throw SizeLimit("oracle_tutte_exact size limit exceeded");
  const std::size_t n = vertices.size();
  auto t = tutte_rational(h, vertices, pins);
  std::vector<Rational> bx(n, Rational(0)), by(n, Rational(0));
  for (std::size_t k = 0; k < pins.size(); ++k) {
    auto i = static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), pins[k]) - vertices.begin());
    bx[i] = positions[k].first;
    by[i] = positions[k].second;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && t[piv][col] == 0) ++piv;
    if (piv == n) throw Singular("Tutte matrix is singular");
    std::swap(t[piv], t[col]);
    std::swap(bx[piv], bx[col]);
    std::swap(by[piv], by[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || t[r][col] == 0) continue;
      Rational f = t[r][col] / t[col][col];
      for (std::size_t c = col; c < n; ++c) t[r][c] -= f * t[col][c];
      bx[r] -= f * bx[col];
      by[r] -= f * by[col];
    }
  }
  std::vector<std::pair<Rational, Rational>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {bx[i] / t[i][i], by[i] / t[i][i]};
  return out;
}

Rational oracle_tutte_det(const Graph& h, const std::vector<Vertex>& vertices, const std::vector<Vertex>& pins) {
  auto t = tutte_rational(h, vertices, pins);
  const std::size_t n = vertices.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && t[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(t[piv], t[col]);
      det = -det;
    }
    det *= t[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (t[r][col] == 0) continue;
      Rational f = t[r][col] / t[col][col];
      for (std::size_t c = col; c < n; ++c) t[r][c] -= f * t[col][c];
    }
  }
  return det;
}

}  // namespace dp::oracle
