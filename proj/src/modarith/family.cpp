#include <algorithm>
#include <exception>

#include "dynplanar/modarith.hpp"

namespace dp {

namespace {

bool has(const VertexSet& vs, Vertex v) { return std::binary_search(vs.begin(), vs.end(), v); }

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet unite(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Vertex sets of the 3-connected components in the block holding both vertices.
std::vector<VertexSet> rigid_components(const DecompositionState& s, Vertex a, Vertex b) {
  int bi = s.block_containing(a, b);
  if (bi < 0 || !s.blocks[static_cast<std::size_t>(bi)].tri) return {};
  std::vector<VertexSet> out;
  for (const auto& c : s.blocks[static_cast<std::size_t>(bi)].tri->components)
    if (!c.cycle) out.push_back(c.vertices);
  return out;
}

}  // namespace

Pins canonical_pins(const Graph& host) {
  const auto& outer = embed_3connected(host).outer.cycle;
  return {outer[0], outer[1], outer[2]};
}

PrimePool::PrimePool(PoolConfig cfg) : cfg_(cfg), window_(primes_in_window(cfg.window_lo, cfg.window_hi)) {
  if (cfg_.size < 1 || cfg_.low_water < 1 || cfg_.low_water > cfg_.size)
    throw std::invalid_argument("pool size and low-water mark must satisfy 1 <= low <= size");
  if (window_.size() < static_cast<std::size_t>(cfg_.size)) throw std::invalid_argument("prime window too small");
  cursor_ = static_cast<std::size_t>(cfg_.seed % window_.size());
  for (int i = 0; i < cfg_.size; ++i) live_.push_back(next_fresh());
}

Residue PrimePool::next_fresh() {
  if (issued_ >= window_.size()) throw std::runtime_error("prime window exhausted");
  Residue p = window_[(cursor_ + issued_) % window_.size()];
  ++issued_;
  if (!is_prime(p)) throw std::logic_error("sieve produced a composite");
  return p;
}

void PrimePool::drop(Residue p) {
  auto it = std::find(live_.begin(), live_.end(), p);
  if (it == live_.end()) return;
  live_.erase(it);
  ++drops_;
}

std::vector<Residue> PrimePool::refresh() {
  std::vector<Residue> fresh;
  while (static_cast<int>(live_.size()) < cfg_.size) {
    fresh.push_back(next_fresh());
    live_.push_back(fresh.back());
  }
  if (!fresh.empty()) ++refreshes_;
  return fresh;
}

BundleFamily::BundleFamily(PoolConfig cfg, Exec exec) : pool_(cfg), exec_(exec) {}

const std::vector<TutteBundle>* BundleFamily::bundles(const VertexSet& host) const {
  auto it = hosts_.find(host);
  return it == hosts_.end() ? nullptr : &it->second;
}

std::map<VertexSet, BundleFamily::HostSpec> BundleFamily::live_hosts(const DecompositionState& state) {
  std::map<VertexSet, HostSpec> out;
  for (const auto& b : state.blocks) {
    if (!b.tri) continue;
    for (std::size_t i = 0; i < b.tri->components.size(); ++i) {
      const auto& c = b.tri->components[i];
      if (c.cycle) continue;
      Graph g = b.tri->component_graph(state.graph, static_cast<int>(i));
      Pins pins = canonical_pins(g);
      out.emplace(c.vertices, HostSpec{std::move(g), pins});
    }
  }
  return out;
}

template <typename Op>
BundleFamily::Staged BundleFamily::per_prime(Op&& op) {
  const int n = static_cast<int>(pool_.live().size());
  Staged out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto body = [&](int i) {
    try {
      out[static_cast<std::size_t>(i)] = op(i);
    } catch (const NotInvertible&) {
      out[static_cast<std::size_t>(i)].reset();
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (exec_ == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

BundleFamily::Staged BundleFamily::init_all(const HostSpec& spec) {
  ++counters_.inits;
  return per_prime([&](int i) {
    return bundle_init(spec.graph, spec.pins, pool_.live()[static_cast<std::size_t>(i)], Exec::serial);
  });
}

void BundleFamily::sync(const DecompositionState& state) {
  auto specs = live_hosts(state);
  std::map<VertexSet, Staged> staged;
  for (const auto& [key, spec] : specs) staged[key] = init_all(spec);
  settle(std::move(staged), std::move(specs));
}

void BundleFamily::settle(std::map<VertexSet, Staged> staged, std::map<VertexSet, HostSpec> specs) {
  const auto live = pool_.live();
  std::vector<char> failed(live.size(), 0);
  for (const auto& [key, slots] : staged)
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (!slots[i]) failed[i] = 1;
  hosts_.clear();
  for (auto& [key, slots] : staged) {
    auto& dst = hosts_[key];
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (!failed[i]) dst.push_back(std::move(*slots[i]));
  }
  specs_ = std::move(specs);
  for (std::size_t i = 0; i < live.size(); ++i)
    if (failed[i]) pool_.drop(live[i]);
  if (pool_.below_low_water()) refresh();
}

void BundleFamily::drop_prime(Residue p) {
  const auto& live = pool_.live();
  auto it = std::find(live.begin(), live.end(), p);
  if (it == live.end()) return;
  auto idx = static_cast<std::size_t>(it - live.begin());
  for (auto& [key, v] : hosts_) v.erase(v.begin() + static_cast<std::ptrdiff_t>(idx));
  pool_.drop(p);
  if (pool_.below_low_water()) refresh();
}

void BundleFamily::refresh() {
  auto fresh = pool_.refresh();
  for (std::size_t k = 0; k < fresh.size(); ++k) {
    Residue p = fresh[k];
    std::vector<std::pair<const VertexSet*, TutteBundle>> made;
    bool ok = true;
    for (const auto& [key, spec] : specs_) {
      try {
        made.emplace_back(&key, bundle_init(spec.graph, spec.pins, p, exec_));
      } catch (const NotInvertible&) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      pool_.drop(p);
      Residue q = pool_.next_fresh();
      pool_.adopt(q);
      fresh.push_back(q);
      continue;
    }
    for (auto& [key, b] : made) hosts_[*key].push_back(std::move(b));
  }
  // Replacement primes may land out of pool order.
  const auto& live = pool_.live();
  for (auto& [key, v] : hosts_) {
    std::vector<TutteBundle> ordered;
    for (Residue p : live)
      for (auto& b : v)
        if (b.p == p) ordered.push_back(std::move(b));
    v = std::move(ordered);
  }
}

std::optional<BundleFamily::Staged> BundleFamily::fast_merge(const DecompositionState& before, const VertexSet& key,
                                                             const HostSpec& spec, Edge e) {
  const Vertex x = e.lo, y = e.hi;
  for (const auto& a : rigid_components(before, x, y)) {
    if (!has(a, x) || has(a, y)) continue;
    for (const auto& b : rigid_components(before, x, y)) {
      if (!has(b, y) || has(b, x)) continue;
      VertexSet shared = intersect(a, b);
      if (shared.size() != 2 || unite(a, b) != key) continue;
      auto ia = hosts_.find(a), ib = hosts_.find(b);
      if (ia == hosts_.end() || ib == hosts_.end()) return std::nullopt;
      const Vertex s1 = shared[0], s2 = shared[1];
      const bool keep_virtual = spec.graph.has_edge(s1, s2);
      Staged out = per_prime([&](int i) {
        const auto& ba = ia->second[static_cast<std::size_t>(i)];
        const auto& bb = ib->second[static_cast<std::size_t>(i)];
        TutteBundle m = smw_merge(smw_pins(ba, {s1, s2, x}, exec_), smw_pins(bb, {s1, s2, y}, exec_), Edge(s1, s2),
                                  Edge(x, y), exec_);
        if (!keep_virtual) m = smw_edge(m, Edge(s1, s2), EdgeDir::remove, exec_);
        m = smw_pins(m, spec.pins, exec_);
        if (m.host.edges() != spec.graph.edges()) throw PreconditionViolation("merged host differs");
        return m;
      });
      counters_.smw_ops += 5;
      ++counters_.fast_merges;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<BundleFamily::Staged> BundleFamily::fast_split(const DecompositionState& after, const VertexSet& old_key,
                                                             Edge e, const std::map<VertexSet, HostSpec>& specs,
                                                             std::map<VertexSet, Staged>& staged) {
  const Vertex x = e.lo, y = e.hi;
  auto it = hosts_.find(old_key);
  if (it == hosts_.end()) return std::nullopt;
  int bi = after.block_containing(x, y);
  if (bi < 0) return std::nullopt;
  for (const auto& a : rigid_components(after, x, y)) {
    if (!has(a, x) || has(a, y)) continue;
    for (const auto& b : rigid_components(after, x, y)) {
      if (!has(b, y) || has(b, x)) continue;
      VertexSet shared = intersect(a, b);
      if (shared.size() != 2 || unite(a, b) != old_key) continue;
      const HostSpec& sa = specs.at(a);
      const HostSpec& sb = specs.at(b);
      const Vertex s1 = shared[0], s2 = shared[1];
      Staged left(pool_.live().size()), right(pool_.live().size());
      Staged done = per_prime([&](int i) {
        TutteBundle w = it->second[static_cast<std::size_t>(i)];
        if (!w.host.has_edge(s1, s2)) w = smw_edge(w, Edge(s1, s2), EdgeDir::insert, exec_);
        w = smw_pins(w, {s1, x, y}, exec_);
        auto [pa, pb] = smw_split(w, a, b, Edge(s1, s2), Edge(x, y), exec_);
        pa = smw_pins(pa, sa.pins, exec_);
        pb = smw_pins(pb, sb.pins, exec_);
        if (pa.host.edges() != sa.graph.edges() || pb.host.edges() != sb.graph.edges())
          throw PreconditionViolation("split hosts differ");
        left[static_cast<std::size_t>(i)] = std::move(pa);
        right[static_cast<std::size_t>(i)] = std::move(pb);
        return w;
      });
      for (std::size_t i = 0; i < done.size(); ++i)
        if (!done[i]) left[i].reset(), right[i].reset();
      staged[a] = std::move(left);
      staged[b] = std::move(right);
      counters_.smw_ops += 5;
      ++counters_.fast_splits;
      return done;
    }
  }
  return std::nullopt;
}

BundleFamily::Staged BundleFamily::edge_diff(const VertexSet& key, const HostSpec& spec) {
  const auto& old = hosts_.at(key);
  if (old.empty()) return init_all(spec);
  const Graph& before = old.front().host;
  std::vector<Edge> add, del;
  for (const Edge& e : spec.graph.edges())
    if (e.hi >= before.order() || !before.has_edge(e.lo, e.hi)) add.push_back(e);
  for (const Edge& e : before.edges())
    if (e.hi >= spec.graph.order() || !spec.graph.has_edge(e.lo, e.hi)) del.push_back(e);
  if (add.size() + del.size() > 4) return init_all(spec);
  counters_.smw_ops += static_cast<long>(add.size() + del.size()) + 1;
  return per_prime([&](int i) {
    TutteBundle b = old[static_cast<std::size_t>(i)];
    // Insertions first so intermediate hosts stay connected.
    for (const Edge& e : add) b = smw_edge(b, e, EdgeDir::insert, exec_);
    for (const Edge& e : del) b = smw_edge(b, e, EdgeDir::remove, exec_);
    if (b.pins != spec.pins) b = smw_pins(b, spec.pins, exec_);
    return b;
  });
}

void BundleFamily::coherent_update(const DecompositionState& before, const DecompositionState& after,
                                   const ChangeEvent& e, const ChangeType& t) {
  auto specs = live_hosts(after);
  std::map<VertexSet, Staged> staged;
  const bool plus = t.direction == ChangeType::Direction::plus;

  if (!plus && t.k_before == 3 && t.k_after == 2) {
    for (const auto& [key, v] : hosts_)
      if (has(key, e.edge.lo) && has(key, e.edge.hi) && !specs.contains(key)) {
        try {
          fast_split(after, key, e.edge, specs, staged);
        } catch (const PreconditionViolation&) {
          staged.clear();
        }
        break;
      }
  }

  for (const auto& [key, spec] : specs) {
    if (staged.contains(key)) continue;
    auto it = hosts_.find(key);
    if (it != hosts_.end() && !it->second.empty() && it->second.front().host.edges() == spec.graph.edges() &&
        it->second.front().pins == spec.pins) {
      staged[key] = Staged(it->second.begin(), it->second.end());
      continue;
    }
    if (plus && t.k_before == 2 && t.k_after == 3 && has(key, e.edge.lo) && has(key, e.edge.hi)) {
      try {
        if (auto m = fast_merge(before, key, spec, e.edge)) {
          staged[key] = std::move(*m);
          continue;
        }
      } catch (const PreconditionViolation&) {
      }
    }
    if (it != hosts_.end()) {
      try {
        staged[key] = edge_diff(key, spec);
        continue;
      } catch (const PreconditionViolation&) {
      }
    }
    staged[key] = init_all(spec);
  }
  settle(std::move(staged), std::move(specs));
}

}  // namespace dp
