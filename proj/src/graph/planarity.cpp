#include <algorithm>
#include <deque>
#include <set>

#include "dynplanar/graph.hpp"

namespace dp {

CombFace CombFace::reversed() const {
  CombFace out{std::vector<Vertex>(cycle.rbegin(), cycle.rend())};
  return out;
}

CombFace CombFace::normalized() const {
  CombFace out = *this;
  if (out.cycle.empty()) return out;
  auto it = std::min_element(out.cycle.begin(), out.cycle.end());
  std::rotate(out.cycle.begin(), it, out.cycle.end());
  return out;
}

bool CombFace::same_orientation_as(const CombFace& o) const { return normalized() == o.normalized(); }

bool CombFace::same_face_as(const CombFace& o) const {
  return same_orientation_as(o) || same_orientation_as(o.reversed());
}

bool CombFace::contains(Vertex v) const { return std::find(cycle.begin(), cycle.end(), v) != cycle.end(); }

std::vector<int> Embedding::faces_with_edge(Vertex u, Vertex v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& c = faces[i].cycle;
    for (std::size_t k = 0; k < c.size(); ++k) {
      Vertex a = c[k], b = c[(k + 1) % c.size()];
      if ((a == u && b == v) || (a == v && b == u)) {
        out.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  return out;
}

std::vector<int> Embedding::faces_with_vertex(Vertex v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].contains(v)) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

std::vector<Vertex> find_cycle(const Graph& g, Vertex start) {
  const int n = g.order();
  std::vector<int> parent(static_cast<std::size_t>(n), -2), depth(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
  parent[static_cast<std::size_t>(start)] = -1;
  while (!stack.empty()) {
    auto& [u, idx] = stack.back();
    auto nb = g.neighbours(u);
    if (idx == nb.size()) {
      stack.pop_back();
      continue;
    }
    Vertex v = nb[idx++];
    if (v == parent[static_cast<std::size_t>(u)]) continue;
    if (parent[static_cast<std::size_t>(v)] == -2) {
      parent[static_cast<std::size_t>(v)] = u;
      depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
      stack.emplace_back(v, 0);
    } else if (depth[static_cast<std::size_t>(v)] < depth[static_cast<std::size_t>(u)]) {
      std::vector<Vertex> cyc;
      for (Vertex w = u; w != v; w = parent[static_cast<std::size_t>(w)]) cyc.push_back(w);
      cyc.push_back(v);
      return cyc;
    }
  }
  return {};
}

struct Fragment {
  std::vector<Vertex> attachments;  // sorted
  std::vector<Vertex> inner;        // empty for a single chord
  Edge chord;
};

}  // namespace

std::optional<std::vector<CombFace>> planar_faces(const Graph& g) {
  auto active = g.active_vertices();
  if (active.size() < 3) return std::nullopt;
  const int n = g.order();
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  std::set<Edge> placed_edges;

  std::vector<std::vector<Vertex>> faces;
  auto cyc = find_cycle(g, active.front());
  if (cyc.empty()) return std::nullopt;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    placed[static_cast<std::size_t>(cyc[i])] = 1;
    placed_edges.insert(Edge(cyc[i], cyc[(i + 1) % cyc.size()]));
  }
  faces.push_back(cyc);
  faces.emplace_back(cyc.rbegin(), cyc.rend());

  const auto total = static_cast<std::size_t>(g.size());
  while (placed_edges.size() < total) {
    std::vector<Fragment> frags;
    for (const Edge& e : g.edges())
      if (placed[static_cast<std::size_t>(e.lo)] && placed[static_cast<std::size_t>(e.hi)] && !placed_edges.count(e))
        frags.push_back(Fragment{{e.lo, e.hi}, {}, e});
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex s : active) {
      if (placed[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
      Fragment f;
      std::set<Vertex> att;
      std::vector<Vertex> st{s};
      seen[static_cast<std::size_t>(s)] = 1;
      while (!st.empty()) {
        Vertex u = st.back();
        st.pop_back();
        f.inner.push_back(u);
        for (Vertex v : g.neighbours(u)) {
          if (placed[static_cast<std::size_t>(v)])
            att.insert(v);
          else if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            st.push_back(v);
          }
        }
      }
      std::sort(f.inner.begin(), f.inner.end());
      f.attachments.assign(att.begin(), att.end());
      frags.push_back(std::move(f));
    }

    int chosen = -1, chosen_face = -1;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      std::vector<int> ok;
      for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& fc = faces[fi];
        bool all = std::all_of(frags[i].attachments.begin(), frags[i].attachments.end(),
                               [&](Vertex a) { return std::find(fc.begin(), fc.end(), a) != fc.end(); });
        if (all) ok.push_back(static_cast<int>(fi));
      }
      if (ok.empty()) return std::nullopt;
      if (ok.size() == 1) {
        chosen = static_cast<int>(i);
        chosen_face = ok.front();
        break;
      }
      if (chosen < 0) {
        chosen = static_cast<int>(i);
        chosen_face = ok.front();
      }
    }
    const Fragment& fr = frags[static_cast<std::size_t>(chosen)];
    if (fr.attachments.size() < 2) return std::nullopt;  // not biconnected

    std::vector<Vertex> path;
    if (fr.inner.empty()) {
      path = {fr.chord.lo, fr.chord.hi};
    } else {
      Vertex a = fr.attachments[0], b = fr.attachments[1];
      std::vector<char> in(static_cast<std::size_t>(n), 0);
      for (Vertex v : fr.inner) in[static_cast<std::size_t>(v)] = 1;
      std::vector<int> prev(static_cast<std::size_t>(n), -1);
      std::deque<Vertex> q;
      for (Vertex v : g.neighbours(a))
        if (in[static_cast<std::size_t>(v)] && prev[static_cast<std::size_t>(v)] == -1) {
          prev[static_cast<std::size_t>(v)] = a;
          q.push_back(v);
        }
      Vertex end = -1;
      while (!q.empty() && end < 0) {
        Vertex u = q.front();
        q.pop_front();
        if (g.has_edge(u, b)) {
          end = u;
          break;
        }
        for (Vertex v : g.neighbours(u))
          if (in[static_cast<std::size_t>(v)] && prev[static_cast<std::size_t>(v)] == -1) {
            prev[static_cast<std::size_t>(v)] = u;
            q.push_back(v);
          }
      }
      if (end < 0) return std::nullopt;
      std::vector<Vertex> rev{b};
      for (Vertex w = end; w != a; w = prev[static_cast<std::size_t>(w)]) rev.push_back(w);
      rev.push_back(a);
      path.assign(rev.rbegin(), rev.rend());
    }

    auto face = faces[static_cast<std::size_t>(chosen_face)];
    const auto m = face.size();
    auto pos = [&](Vertex v) {
      return static_cast<std::size_t>(std::find(face.begin(), face.end(), v) - face.begin());
    };
    std::size_t i = pos(path.front()), j = pos(path.back());
    std::vector<Vertex> f1, f2;
    for (std::size_t k = i;; k = (k + 1) % m) {
      f1.push_back(face[k]);
      if (k == j) break;
    }
    for (std::size_t k = path.size() - 2; k >= 1; --k) f1.push_back(path[k]);
    for (std::size_t k = j;; k = (k + 1) % m) {
      f2.push_back(face[k]);
      if (k == i) break;
    }
    for (std::size_t k = 1; k + 1 < path.size(); ++k) f2.push_back(path[k]);
    faces[static_cast<std::size_t>(chosen_face)] = std::move(f1);
    faces.push_back(std::move(f2));
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      placed[static_cast<std::size_t>(path[k])] = 1;
      placed_edges.insert(Edge(path[k], path[k + 1]));
    }
    placed[static_cast<std::size_t>(path.back())] = 1;
  }

  std::vector<CombFace> out;
  out.reserve(faces.size());
  for (auto& f : faces) out.push_back(CombFace{std::move(f)});
  return out;
}

bool is_planar(const Graph& g) {
  auto active = g.active_vertices();
  if (active.size() >= 3 && g.size() > 3 * static_cast<int>(active.size()) - 6) return false;
  for (const auto& block : biconnected_blocks(g)) {
    if (block.size() < 3) continue;
    Graph b = g.restricted_to(block);
    if (b.size() > 3 * static_cast<int>(block.size()) - 6) return false;
    if (!planar_faces(b)) return false;
  }
  return true;
}

namespace {

Embedding orient_and_pack(std::vector<CombFace> faces, const CombFace& outer) {
  int match = -1;
  bool flip = false;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].same_orientation_as(outer)) {
      match = static_cast<int>(i);
      break;
    }
    if (faces[i].same_orientation_as(outer.reversed())) {
      match = static_cast<int>(i);
      flip = true;
      break;
    }
  }
  if (match < 0) throw NotAFace("given cycle is not a face of the embedding");
  Embedding emb;
  for (auto& f : faces) emb.faces.push_back((flip ? f.reversed() : f).normalized());
  std::sort(emb.faces.begin(), emb.faces.end(),
            [](const CombFace& a, const CombFace& b) { return a.cycle < b.cycle; });
  emb.outer = outer.normalized();
  return emb;
}

}  // namespace

Embedding embed_3connected(const Graph& c, const CombFace& outer) {
  if (!is_3connected(c)) throw Not3Connected("graph is not 3-connected");
  auto faces = planar_faces(c);
  if (!faces) throw std::invalid_argument("graph is not planar");
  return orient_and_pack(std::move(*faces), outer);
}

Embedding embed_3connected(const Graph& c) {
  if (!is_3connected(c)) throw Not3Connected("graph is not 3-connected");
  auto faces = planar_faces(c);
  if (!faces) throw std::invalid_argument("graph is not planar");
  CombFace best;
  bool have = false;
  for (const auto& f : *faces)
    for (const auto& cand : {f.normalized(), f.reversed().normalized()})
      if (!have || cand.cycle < best.cycle) {
        best = cand;
        have = true;
      }
  return orient_and_pack(std::move(*faces), best);
}

}  // namespace dp
