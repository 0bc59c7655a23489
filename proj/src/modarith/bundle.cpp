#include <algorithm>
#include <atomic>

#include "dynplanar/modarith.hpp"

namespace dp {

namespace {

constexpr int kParallelCutoff = 64;

std::atomic<bool> g_fault{false};

bool has(const std::vector<Vertex>& sorted_vs, Vertex v) { return std::binary_search(sorted_vs.begin(), sorted_vs.end(), v); }

int find_index(const std::vector<Vertex>& sorted_vs, Vertex v) {
  auto it = std::lower_bound(sorted_vs.begin(), sorted_vs.end(), v);
  return it != sorted_vs.end() && *it == v ? static_cast<int>(it - sorted_vs.begin()) : -1;
}

Graph widened(const Graph& g, int n) {
  if (n <= g.order()) return g;
  auto es = g.edges();
  return graph_from_edges(n, es);
}

Graph graph_union(const Graph& a, const Graph& b) {
  Graph out = widened(a, std::max(a.order(), b.order()));
  for (const Edge& e : b.edges())
    if (!out.has_edge(e.lo, e.hi)) out.add_edge(e.lo, e.hi);
  return out;
}

using SparseRow = std::vector<std::pair<int, std::int64_t>>;

// Rows of the generalised Tutte matrix with an arbitrary pinned set.
std::vector<SparseRow> tutte_rows(const Graph& h, const std::vector<Vertex>& vertices, const std::vector<Vertex>& pinned) {
  std::vector<SparseRow> rows(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex v = vertices[i];
    if (std::find(pinned.begin(), pinned.end(), v) != pinned.end() || v >= h.order()) {
      rows[i].emplace_back(static_cast<int>(i), 1);
      continue;
    }
    SparseRow r;
    r.emplace_back(static_cast<int>(i), h.degree(v));
    for (Vertex w : h.neighbours(v)) {
      int j = find_index(vertices, w);
      if (j < 0) throw PreconditionViolation("host edge leaves the vertex set");
      r.emplace_back(j, -1);
    }
    std::sort(r.begin(), r.end());
    rows[i] = std::move(r);
  }
  return rows;
}

// Working state for a transition: a host, its vertex order, a pinned set of any size and the inverse.
struct Frame {
  Graph host;
  std::vector<Vertex> vertices;
  std::vector<Vertex> pinned;
  ZpMatrix tinv;
};

// Inverse of T + U V^T where U has unit columns at `rows` and V^T has the rows of `deltas`.
ZpMatrix smw_rows(const ZpMatrix& tinv, const std::vector<int>& rows, const std::vector<SparseRow>& deltas, bool flip,
                  Exec exec) {
  const Residue p = tinv.modulus();
  const int n = tinv.rows();
  const int k = static_cast<int>(rows.size());
  if (k == 0) return tinv;
  ZpMatrix z(p, k, n);  // V^T Tinv
  for (int i = 0; i < k; ++i) {
    auto out = z.row(i);
    for (auto [j, coef] : deltas[static_cast<std::size_t>(i)]) {
      Residue c = to_residue(coef, p);
      auto src = tinv.row(j);
      for (int col = 0; col < n; ++col) {
        auto s = static_cast<std::size_t>(col);
        out[s] = add_mod(out[s], mul_mod(c, src[s], p), p);
      }
    }
  }
  ZpMatrix cap = ZpMatrix::identity(p, k);  // I + V^T Tinv U
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) cap.at(i, l) = add_mod(cap.at(i, l), z.at(i, rows[static_cast<std::size_t>(l)]), p);
  ZpMatrix cap_inv = invert_gauss(cap, Exec::serial);
  ZpMatrix y = multiply(cap_inv, z, Exec::serial);
  ZpMatrix out = tinv;
  auto body = [&](int r) {
    auto dst = out.row(r);
    for (int l = 0; l < k; ++l) {
      Residue w = tinv.at(r, rows[static_cast<std::size_t>(l)]);
      if (w == 0) continue;
      auto yl = y.row(l);
      for (int col = 0; col < n; ++col) {
        auto s = static_cast<std::size_t>(col);
        Residue t = mul_mod(w, yl[s], p);
        dst[s] = flip ? add_mod(dst[s], t, p) : sub_mod(dst[s], t, p);
      }
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int r = 0; r < n; ++r) body(r);
  } else {
    for (int r = 0; r < n; ++r) body(r);
  }
  return out;
}

// Moves a frame to a new host and pinned set over the same vertex order.
Frame transition(const Frame& f, const Graph& host, const std::vector<Vertex>& pinned, bool flip, Exec exec) {
  auto before = tutte_rows(f.host, f.vertices, f.pinned);
  auto after = tutte_rows(host, f.vertices, pinned);
  std::vector<int> rows;
  std::vector<SparseRow> deltas;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i] == after[i]) continue;
    std::map<int, std::int64_t> d;
    for (auto [j, c] : after[i]) d[j] += c;
    for (auto [j, c] : before[i]) d[j] -= c;
    SparseRow row;
    for (auto [j, c] : d)
      if (c != 0) row.emplace_back(j, c);
    rows.push_back(static_cast<int>(i));
    deltas.push_back(std::move(row));
  }
  Frame out{host, f.vertices, pinned, smw_rows(f.tinv, rows, deltas, flip, exec)};
  return out;
}

Frame frame_of(const TutteBundle& b) { return {b.host, b.vertices, {b.pins.begin(), b.pins.end()}, b.tinv}; }

void derive_products(TutteBundle& b) {
  const Residue p = b.p;
  const int n = static_cast<int>(b.vertices.size());
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n));
  std::vector<Residue> deg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Vertex v = b.vertices[static_cast<std::size_t>(i)];
    if (v >= b.host.order()) continue;
    for (Vertex w : b.host.neighbours(v)) nb[static_cast<std::size_t>(i)].push_back(find_index(b.vertices, w));
    deg[static_cast<std::size_t>(i)] = static_cast<Residue>(b.host.degree(v)) % p;
  }
  const ZpMatrix& t = b.tinv;
  b.col_l = ZpMatrix(p, n, n);
  b.row_l = ZpMatrix(p, n, n);
  b.bilin = ZpMatrix(p, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Residue v = mul_mod(deg[static_cast<std::size_t>(c)], t.at(r, c), p);
      for (int j : nb[static_cast<std::size_t>(c)]) v = sub_mod(v, t.at(r, j), p);
      b.col_l.at(r, c) = v;
      Residue w = mul_mod(deg[static_cast<std::size_t>(r)], t.at(r, c), p);
      for (int j : nb[static_cast<std::size_t>(r)]) w = sub_mod(w, t.at(j, c), p);
      b.row_l.at(r, c) = w;
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Residue v = mul_mod(deg[static_cast<std::size_t>(r)], b.col_l.at(r, c), p);
      for (int j : nb[static_cast<std::size_t>(r)]) v = sub_mod(v, b.col_l.at(j, c), p);
      b.bilin.at(r, c) = v;
    }
}

TutteBundle finish(Frame f, const Pins& pins, Residue p) {
  TutteBundle b;
  b.host = std::move(f.host);
  b.vertices = std::move(f.vertices);
  b.pins = pins;
  b.p = p;
  b.tinv = std::move(f.tinv);
  derive_products(b);
  return b;
}

// Drops vertices whose rows are unit rows and which no other row references.
Frame restrict_frame(const Frame& f, const std::vector<Vertex>& keep) {
  Frame out;
  out.host = f.host;
  out.vertices = keep;
  out.pinned = f.pinned;
  std::vector<int> idx;
  for (Vertex v : keep) idx.push_back(find_index(f.vertices, v));
  const int n = static_cast<int>(keep.size());
  out.tinv = ZpMatrix(f.tinv.modulus(), n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.tinv.at(r, c) = f.tinv.at(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return out;
}

ZpMatrix block_diagonal(const ZpMatrix& a, const std::vector<Vertex>& va, const ZpMatrix& b,
                        const std::vector<Vertex>& vb, const std::vector<Vertex>& all) {
  const int n = static_cast<int>(all.size());
  ZpMatrix out(a.modulus(), n, n);
  auto place = [&](const ZpMatrix& m, const std::vector<Vertex>& vs) {
    std::vector<int> idx;
    for (Vertex v : vs) idx.push_back(find_index(all, v));
    for (std::size_t r = 0; r < vs.size(); ++r)
      for (std::size_t c = 0; c < vs.size(); ++c)
        out.at(idx[r], idx[c]) = m.at(static_cast<int>(r), static_cast<int>(c));
  };
  place(a, va);
  place(b, vb);
  return out;
}

std::vector<Vertex> sorted_union(std::vector<Vertex> a, const std::vector<Vertex>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool same_pin_set(const Pins& a, std::vector<Vertex> b) {
  std::vector<Vertex> x(a.begin(), a.end());
  std::sort(x.begin(), x.end());
  std::sort(b.begin(), b.end());
  return x == b;
}

void check_pins(const Pins& pins) {
  if (pins[0] == pins[1] || pins[1] == pins[2] || pins[0] == pins[2])
    throw PreconditionViolation("pins must be distinct");
}

}  // namespace

void set_smw_fault(bool on) { g_fault = on; }
bool smw_fault() { return g_fault; }

int TutteMatrix::index_of(Vertex v) const { return find_index(vertices, v); }

ZpMatrix TutteMatrix::dense(Residue p) const {
  const int n = static_cast<int>(vertices.size());
  ZpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i)
    for (auto [j, c] : rows[static_cast<std::size_t>(i)]) m.at(i, j) = to_residue(c, p);
  return m;
}

std::vector<Vertex> host_vertices(const Graph& h, const Pins& pins) {
  auto vs = h.active_vertices();
  return sorted_union(std::move(vs), {pins.begin(), pins.end()});
}

TutteMatrix tutte_matrix(const Graph& h, const Pins& pins) {
  check_pins(pins);
  for (Vertex v : pins)
    if (v < 0) throw PreconditionViolation("pin out of range");
  TutteMatrix t;
  t.vertices = host_vertices(h, pins);
  t.pins = pins;
  t.rows = tutte_rows(h, t.vertices, {pins.begin(), pins.end()});
  return t;
}

int TutteBundle::index_of(Vertex v) const { return find_index(vertices, v); }

bool TutteBundle::operator==(const TutteBundle& o) const {
  return vertices == o.vertices && pins == o.pins && p == o.p && host.edges() == o.host.edges() && tinv == o.tinv &&
         col_l == o.col_l && row_l == o.row_l && bilin == o.bilin;
}

TutteBundle bundle_init(const Graph& h, const Pins& pins, Residue p, Exec exec) {
  TutteMatrix t = tutte_matrix(h, pins);
  Frame f{h, t.vertices, {pins.begin(), pins.end()}, invert_gauss(t.dense(p), exec)};
  return finish(std::move(f), pins, p);
}

bool bundle_consistent(const TutteBundle& b) {
  TutteMatrix t = tutte_matrix(b.host, b.pins);
  if (t.vertices != b.vertices) return false;
  if (multiply(t.dense(b.p), b.tinv, Exec::serial) != ZpMatrix::identity(b.p, static_cast<int>(b.vertices.size())))
    return false;
  TutteBundle again = b;
  derive_products(again);
  return again == b;
}

TutteBundle smw_edge(const TutteBundle& b, Edge e, EdgeDir dir, Exec exec) {
  if (!has(b.vertices, e.lo) || !has(b.vertices, e.hi) || e.lo == e.hi)
    throw PreconditionViolation("edge endpoints must be host vertices");
  const bool present = e.hi < b.host.order() && b.host.has_edge(e.lo, e.hi);
  if (present == (dir == EdgeDir::insert)) throw PreconditionViolation("edge change is not legal in the host");
  Graph host = widened(b.host, e.hi + 1);
  if (dir == EdgeDir::insert)
    host.add_edge(e.lo, e.hi);
  else
    host.remove_edge(e.lo, e.hi);
  Frame f = frame_of(b);
  f.host = widened(f.host, host.order());
  return finish(transition(f, host, f.pinned, smw_fault(), exec), b.pins, b.p);
}

TutteBundle smw_pins(const TutteBundle& b, const Pins& new_pins, Exec exec) {
  check_pins(new_pins);
  for (Vertex v : new_pins)
    if (!has(b.vertices, v)) throw PreconditionViolation("new pin is not a host vertex");
  Frame f = frame_of(b);
  return finish(transition(f, b.host, {new_pins.begin(), new_pins.end()}, false, exec), new_pins, b.p);
}

TutteBundle smw_merge(const TutteBundle& b1, const TutteBundle& b2, Edge shared, Edge bridge, Exec exec) {
  if (b1.p != b2.p) throw PreconditionViolation("bundles use different primes");
  const Vertex s1 = b1.pins[0], s2 = b1.pins[1];
  if (Edge(s1, s2) != shared || b2.pins[0] != s1 || b2.pins[1] != s2)
    throw PreconditionViolation("bundles must be pinned at the shared pair first");
  const Vertex x = b1.pins[2], y = b2.pins[2];
  if (Edge(x, y) != bridge) throw PreconditionViolation("bridge must join the third pins");
  std::vector<Vertex> common;
  std::set_intersection(b1.vertices.begin(), b1.vertices.end(), b2.vertices.begin(), b2.vertices.end(),
                        std::back_inserter(common));
  if (common != std::vector<Vertex>{shared.lo, shared.hi}) throw PreconditionViolation("hosts must share exactly the pair");
  const Residue p = b1.p;

  Frame f;
  f.vertices = sorted_union(b1.vertices, b2.vertices);
  f.host = graph_union(b1.host, b2.host);
  f.host = widened(f.host, std::max(x, y) + 1);
  f.host.add_edge(x, y);
  f.pinned = {s1, s2, x, y};
  const int n = static_cast<int>(f.vertices.size());
  f.tinv = ZpMatrix::identity(p, n);
  auto copy_rows = [&](const TutteBundle& b, Vertex pinned_third) {
    for (std::size_t r = 0; r < b.vertices.size(); ++r) {
      Vertex v = b.vertices[r];
      if (v == s1 || v == s2 || v == pinned_third) continue;
      int dst = find_index(f.vertices, v);
      auto row = f.tinv.row(dst);
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t c = 0; c < b.vertices.size(); ++c)
        row[static_cast<std::size_t>(find_index(f.vertices, b.vertices[c]))] = b.tinv.at(static_cast<int>(r), static_cast<int>(c));
    }
  };
  copy_rows(b1, x);
  copy_rows(b2, y);
  Pins out{s1, x, y};
  return finish(transition(f, f.host, {out.begin(), out.end()}, false, exec), out, p);
}

std::pair<TutteBundle, TutteBundle> smw_split(const TutteBundle& b, const VertexSet& side1, const VertexSet& side2,
                                              Edge shared, Edge bridge, Exec exec) {
  std::vector<Vertex> common;
  std::set_intersection(side1.begin(), side1.end(), side2.begin(), side2.end(), std::back_inserter(common));
  if (common != std::vector<Vertex>{shared.lo, shared.hi}) throw PreconditionViolation("sides must share exactly the pair");
  if (sorted_union(side1, side2) != b.vertices) throw PreconditionViolation("sides must cover the host");
  const Vertex s1 = b.pins[0];
  if (!shared.contains(s1)) throw PreconditionViolation("first pin must lie on the shared pair");
  const Vertex s2 = shared.other(s1);
  Vertex x = b.pins[1], y = b.pins[2];
  if (Edge(x, y) != bridge) throw PreconditionViolation("bridge must join the last two pins");
  if (!has(side1, x)) std::swap(x, y);
  if (!has(side1, x) || !has(side2, y) || has(side2, x) || has(side1, y))
    throw PreconditionViolation("bridge must cross the partition");
  if (!b.host.has_edge(x, y)) throw PreconditionViolation("bridge must be a host edge");
  for (const Edge& e : b.host.edges()) {
    bool in1 = has(side1, e.lo) && has(side1, e.hi), in2 = has(side2, e.lo) && has(side2, e.hi);
    if (!in1 && !in2 && e != bridge) throw PreconditionViolation("host edge crosses the partition");
  }
  Frame f = frame_of(b);
  Frame pinned4 = transition(f, b.host, {s1, s2, x, y}, false, exec);
  auto piece = [&](const VertexSet& side, Vertex third) {
    Frame part = restrict_frame(pinned4, side);
    part.host = b.host.restricted_to(side);
    part.pinned = {s1, s2, third};
    return finish(std::move(part), Pins{s1, s2, third}, b.p);
  };
  return {piece(side1, x), piece(side2, y)};
}

TutteBundle smw_union(const TutteBundle& b1, const TutteBundle& b2, Exec exec) {
  if (b1.p != b2.p) throw PreconditionViolation("bundles use different primes");
  std::vector<Vertex> common;
  std::set_intersection(b1.vertices.begin(), b1.vertices.end(), b2.vertices.begin(), b2.vertices.end(),
                        std::back_inserter(common));
  if (!common.empty()) throw PreconditionViolation("hosts must be disjoint");
  if (b2.vertices.size() == 1) throw PreconditionViolation("single-vertex union belongs to smw_vertex");
  Frame f;
  f.vertices = sorted_union(b1.vertices, b2.vertices);
  f.host = graph_union(b1.host, b2.host);
  int top = 0;
  for (int i = 0; i < 3; ++i) top = std::max({top, b1.pins[static_cast<std::size_t>(i)], b2.pins[static_cast<std::size_t>(i)]});
  f.host = widened(f.host, top + 1);
  for (int i = 0; i < 3; ++i) f.host.add_edge(b1.pins[static_cast<std::size_t>(i)], b2.pins[static_cast<std::size_t>(i)]);
  f.pinned = {b1.pins.begin(), b1.pins.end()};
  f.pinned.insert(f.pinned.end(), b2.pins.begin(), b2.pins.end());
  f.tinv = block_diagonal(b1.tinv, b1.vertices, b2.tinv, b2.vertices, f.vertices);
  Pins out{b1.pins[0], b2.pins[0], b2.pins[2]};
  return finish(transition(f, f.host, {out.begin(), out.end()}, false, exec), out, b1.p);
}

TutteBundle smw_vertex(const TutteBundle& b, Vertex v, const std::array<Vertex, 3>& attach, VertexDir dir, Exec exec) {
  const auto [a1, a2, a3] = attach;
  if (dir == VertexDir::add) {
    if (has(b.vertices, v)) throw PreconditionViolation("vertex already present");
    if (!same_pin_set(b.pins, {a1, a2, a3})) throw PreconditionViolation("attachments must be the pins");
    Frame f;
    f.vertices = sorted_union(b.vertices, {v});
    f.host = widened(b.host, v + 1);
    for (Vertex a : attach) f.host.add_edge(v, a);
    f.pinned = {a1, a2, a3, v};
    ZpMatrix one = ZpMatrix::identity(b.p, 1);
    f.tinv = block_diagonal(b.tinv, b.vertices, one, {v}, f.vertices);
    Pins out{a1, a3, v};
    return finish(transition(f, f.host, {out.begin(), out.end()}, false, exec), out, b.p);
  }
  if (!has(b.vertices, v) || v >= b.host.order()) throw PreconditionViolation("vertex not present");
  std::vector<Vertex> nb(b.host.neighbours(v).begin(), b.host.neighbours(v).end());
  std::vector<Vertex> want{a1, a2, a3};
  std::sort(want.begin(), want.end());
  if (nb != want) throw PreconditionViolation("vertex must have exactly the three attachment edges");
  if (!same_pin_set(b.pins, {a1, a3, v})) throw PreconditionViolation("bundle must be pinned at (a1, a3, v)");
  Graph host = b.host;
  for (Vertex a : attach) host.remove_edge(v, a);
  if (!is_3connected(host)) throw PreconditionViolation("host does not stay 3-connected");
  Frame f = transition(frame_of(b), host, {a1, a2, a3, v}, false, exec);
  std::vector<Vertex> keep = b.vertices;
  std::erase(keep, v);
  Frame r = restrict_frame(f, keep);
  return finish(std::move(r), Pins{a1, a2, a3}, b.p);
}

TutteBundle smw_pair(const TutteBundle& b, Vertex v, Vertex v2, const std::array<Vertex, 4>& attach, VertexDir dir,
                     int keep, Exec exec) {
  if (keep < 0 || keep > 2) throw PreconditionViolation("kept pin index out of range");
  const auto [a1, a2, a3, a4] = attach;
  auto induced_cycle = [&](const Graph& h) {
    auto e = [&](Vertex x, Vertex y) { return h.has_edge(x, y); };
    return e(a1, a2) && e(a2, a3) && e(a3, a4) && e(a4, a1) && !e(a1, a3) && !e(a2, a4);
  };
  const Pins result_pins{attach[static_cast<std::size_t>(keep)], v, v2};
  if (dir == VertexDir::add) {
    if (has(b.vertices, v) || has(b.vertices, v2) || v == v2) throw PreconditionViolation("new vertices must be fresh");
    for (Vertex a : attach)
      if (!has(b.vertices, a)) throw PreconditionViolation("attachment outside the host");
    if (!induced_cycle(b.host)) throw PreconditionViolation("attachments must form an induced 4-cycle");
    if (!same_pin_set(b.pins, {a1, a2, a3})) throw PreconditionViolation("bundle must be pinned at (a1, a2, a3)");
    Frame f;
    f.vertices = sorted_union(b.vertices, {v, v2});
    // a4 may be unpinned, so the frame keeps the old host until the transition.
    f.host = widened(b.host, std::max(v, v2) + 1);
    Graph host = f.host;
    host.add_edge(v, v2);
    host.add_edge(v, a1);
    host.add_edge(v, a2);
    host.add_edge(v2, a3);
    host.add_edge(v2, a4);
    f.pinned = {a1, a2, a3, v, v2};
    ZpMatrix two = ZpMatrix::identity(b.p, 2);
    std::vector<Vertex> fresh{std::min(v, v2), std::max(v, v2)};
    f.tinv = block_diagonal(b.tinv, b.vertices, two, fresh, f.vertices);
    return finish(transition(f, host, {result_pins.begin(), result_pins.end()}, false, exec), result_pins, b.p);
  }
  if (!has(b.vertices, v) || !has(b.vertices, v2)) throw PreconditionViolation("vertices not present");
  auto nbs = [&](Vertex u) { return std::vector<Vertex>(b.host.neighbours(u).begin(), b.host.neighbours(u).end()); };
  auto want = [](std::vector<Vertex> w) {
    std::sort(w.begin(), w.end());
    return w;
  };
  if (nbs(v) != want({v2, a1, a2}) || nbs(v2) != want({v, a3, a4}))
    throw PreconditionViolation("vertices must carry exactly the five pair edges");
  if (!same_pin_set(b.pins, {result_pins.begin(), result_pins.end()}))
    throw PreconditionViolation("bundle must be pinned at (a_keep, v, v')");
  Graph host = b.host;
  host.remove_edge(v, v2);
  host.remove_edge(v, a1);
  host.remove_edge(v, a2);
  host.remove_edge(v2, a3);
  host.remove_edge(v2, a4);
  if (!induced_cycle(host)) throw PreconditionViolation("attachments must form an induced 4-cycle");
  if (!is_3connected(host)) throw PreconditionViolation("host does not stay 3-connected");
  Frame f = transition(frame_of(b), host, {a1, a2, a3, v, v2}, false, exec);
  std::vector<Vertex> rest = b.vertices;
  std::erase(rest, v);
  std::erase(rest, v2);
  return finish(restrict_frame(f, rest), Pins{a1, a2, a3}, b.p);
}

std::pair<Residue, Residue> Coords::at(Vertex v) const {
  int i = find_index(vertices, v);
  if (i < 0) throw std::out_of_range("vertex has no coordinates");
  return {x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)]};
}

Coords embed_coords(const TutteBundle& b) {
  return embed_coords(b, {std::pair<Residue, Residue>{0, 0}, {1, 0}, {0, 1}});
}

Coords embed_coords(const TutteBundle& b, const std::array<std::pair<Residue, Residue>, 3>& positions) {
  Coords out;
  out.p = b.p;
  out.vertices = b.vertices;
  const int n = static_cast<int>(b.vertices.size());
  std::array<int, 3> col{};
  for (int k = 0; k < 3; ++k) col[static_cast<std::size_t>(k)] = b.index_of(b.pins[static_cast<std::size_t>(k)]);
  for (int r = 0; r < n; ++r) {
    Residue x = 0, y = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      Residue t = b.tinv.at(r, col[k]);
      x = add_mod(x, mul_mod(t, positions[k].first % b.p, b.p), b.p);
      y = add_mod(y, mul_mod(t, positions[k].second % b.p, b.p), b.p);
    }
    out.x.push_back(x);
    out.y.push_back(y);
  }
  return out;
}

bool crt_compare(std::span<const Coords> a, std::span<const Coords> b,
                 std::span<const std::pair<Vertex, Vertex>> pairing, std::size_t min_primes) {
  if (a.size() != b.size()) throw std::invalid_argument("prime sets differ");
  if (a.size() < min_primes) throw PoolTooSmall("too few surviving primes to compare");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].p != b[i].p) throw std::invalid_argument("prime sets differ");
    for (auto [u, w] : pairing)
      if (a[i].at(u) != b[i].at(w)) return false;
  }
  return true;
}

}  // namespace dp
