#include "dynplanar/graph.hpp"

#include <algorithm>
#include <functional>
#include <stack>

namespace dp {

void Graph::check(Vertex v) const {
  if (v < 0 || v >= order()) throw std::out_of_range("vertex " + std::to_string(v) + " outside universe");
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check(u);
  check(v);
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) throw IllegalChange("self-loop at " + std::to_string(u));
  if (has_edge(u, v)) throw IllegalChange("edge already present");
  auto ins = [](std::vector<Vertex>& a, Vertex x) { a.insert(std::lower_bound(a.begin(), a.end(), x), x); };
  ins(adj_[static_cast<std::size_t>(u)], v);
  ins(adj_[static_cast<std::size_t>(v)], u);
  ++edge_count_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) throw IllegalChange("edge not present");
  auto del = [](std::vector<Vertex>& a, Vertex x) { a.erase(std::lower_bound(a.begin(), a.end(), x)); };
  del(adj_[static_cast<std::size_t>(u)], v);
  del(adj_[static_cast<std::size_t>(v)], u);
  --edge_count_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : neighbours(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<Vertex> Graph::active_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < order(); ++v)
    if (degree(v) > 0) out.push_back(v);
  return out;
}

Graph Graph::restricted_to(std::span<const Vertex> keep) const {
  std::vector<char> in(adj_.size(), 0);
  for (Vertex v : keep) in[static_cast<std::size_t>(v)] = 1;
  Graph out(order());
  for (Vertex u : keep)
    for (Vertex v : neighbours(u))
      if (u < v && in[static_cast<std::size_t>(v)]) out.add_edge(u, v);
  return out;
}

Graph graph_from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.lo, e.hi);
  return g;
}

std::string ChangeType::str() const {
  return std::string(direction == Direction::plus ? "+" : "-") + std::to_string(k_before) + "," +
         std::to_string(k_after);
}

Graph apply_change(const Graph& g, const ChangeEvent& e) {
  Graph out = g;
  if (e.kind == ChangeEvent::Kind::insert)
    out.add_edge(e.edge.lo, e.edge.hi);
  else
    out.remove_edge(e.edge.lo, e.edge.hi);
  return out;
}

std::vector<int> component_labels(const Graph& g) {
  std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<Vertex> stack{s};
    label[static_cast<std::size_t>(s)] = next;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbours(u))
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  return label;
}

std::vector<Vertex> component_of(const Graph& g, Vertex v) {
  auto label = component_labels(g);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < g.order(); ++u)
    if (label[static_cast<std::size_t>(u)] == label[static_cast<std::size_t>(v)]) out.push_back(u);
  return out;
}

std::vector<std::vector<Vertex>> biconnected_blocks(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<Edge> estack;
  std::vector<std::vector<Vertex>> blocks;
  int timer = 0;

  std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex parent) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    for (Vertex v : g.neighbours(u)) {
      if (v == parent) continue;
      if (disc[static_cast<std::size_t>(v)] < 0) {
        estack.emplace_back(u, v);
        dfs(v, u);
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
          std::vector<Vertex> block;
          Edge stop(u, v);
          while (true) {
            Edge e = estack.back();
            estack.pop_back();
            block.push_back(e.lo);
            block.push_back(e.hi);
            if (e == stop) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (disc[static_cast<std::size_t>(v)] < disc[static_cast<std::size_t>(u)]) {
        estack.emplace_back(u, v);
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(v)]);
      }
    }
  };
  for (Vertex s = 0; s < n; ++s)
    if (disc[static_cast<std::size_t>(s)] < 0 && g.degree(s) > 0) dfs(s, -1);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool is_biconnected(const Graph& g) {
  auto active = g.active_vertices();
  if (active.size() < 2) return false;
  auto blocks = biconnected_blocks(g);
  return blocks.size() == 1 && blocks.front().size() == active.size();
}

bool is_3connected(const Graph& g) {
  auto active = g.active_vertices();
  if (active.size() < 4) return false;
  if (!is_biconnected(g)) return false;
  for (Vertex x : active) {
    Graph h = g;
    std::vector<Vertex> nb(h.neighbours(x).begin(), h.neighbours(x).end());
    for (Vertex y : nb) h.remove_edge(x, y);
    if (!is_biconnected(h)) return false;
    if (h.active_vertices().size() + 1 != active.size()) return false;
  }
  return true;
}

}  // namespace dp
