#include <algorithm>

#include "dynplanar/iso.hpp"

namespace dp {

namespace {

std::vector<long> exact_key(const LabelledComponent& c, const std::vector<Vertex>& anchors) {
  std::vector<long> key{c.cycle ? 1L : 0L, static_cast<long>(c.vertices.size())};
  for (Vertex v : c.vertices) {
    key.push_back(v);
    key.push_back(c.colour_of(v));
  }
  for (const Edge& e : c.graph.edges()) {
    key.insert(key.end(), {e.lo, e.hi, c.label(e.lo, e.hi), c.label(e.hi, e.lo)});
  }
  key.push_back(-1);
  key.insert(key.end(), anchors.begin(), anchors.end());
  return key;
}

// Isomorphism invariants; two components in different buckets are never compared.
std::vector<long> bucket_key(const LabelledComponent& c, const std::vector<Vertex>& anchors) {
  std::vector<long> key{c.cycle ? 1L : 0L, static_cast<long>(c.vertices.size()), c.graph.size()};
  std::vector<std::pair<int, int>> profile;
  for (Vertex v : c.vertices) profile.emplace_back(c.graph.degree(v), c.colour_of(v));
  std::sort(profile.begin(), profile.end());
  for (auto [d, col] : profile) key.insert(key.end(), {d, col});
  std::vector<int> labels;
  for (const Edge& e : c.graph.edges()) {
    labels.push_back(c.label(e.lo, e.hi));
    labels.push_back(c.label(e.hi, e.lo));
  }
  std::sort(labels.begin(), labels.end());
  key.push_back(-1);
  key.insert(key.end(), labels.begin(), labels.end());
  key.push_back(-2);
  for (Vertex a : anchors) key.insert(key.end(), {c.graph.degree(a), c.colour_of(a)});
  return key;
}

}  // namespace

int ClassRegistry::intern(const std::vector<long>& key) {
  auto [it, fresh] = keys_.emplace(key, next_);
  if (fresh) ++next_;
  return it->second;
}

int ClassRegistry::intern_rigid(const LabelledComponent& c, const std::vector<Vertex>& anchors) {
  auto ek = exact_key(c, anchors);
  if (auto it = exact_.find(ek); it != exact_.end()) return it->second;
  auto& bucket = buckets_[bucket_key(c, anchors)];
  int id = -1;
  for (const Rep& rep : bucket) {
    ++rigid_comparisons_;
    Iso3Query q;
    for (std::size_t i = 0; i < anchors.size(); ++i) q.fixed.emplace_back(rep.anchors[i], anchors[i]);
    if (iso3_query(*fp_, rep.component, c, q)) {
      id = rep.id;
      break;
    }
  }
  if (id < 0) {
    id = next_++;
    ++rigid_count_;
    bucket.push_back({c, anchors, id});
  }
  exact_.emplace(std::move(ek), id);
  return id;
}

}  // namespace dp
