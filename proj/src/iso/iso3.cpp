#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "dynplanar/iso.hpp"

namespace dp {

namespace {

// Hosts cached outside the family; cleared wholesale past this size.
constexpr std::size_t kCacheLimit = 4096;

std::vector<std::pair<int, int>> degree_colour_profile(const LabelledComponent& c) {
  std::vector<std::pair<int, int>> out;
  out.reserve(c.vertices.size());
  for (Vertex v : c.vertices) out.emplace_back(c.graph.degree(v), c.colour_of(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> label_profile(const LabelledComponent& c) {
  std::vector<int> out;
  for (const Edge& e : c.graph.edges()) {
    out.push_back(c.label(e.lo, e.hi));
    out.push_back(c.label(e.hi, e.lo));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool respects(const Matching& m, std::span<const std::pair<Vertex, Vertex>> fixed) {
  for (auto [x, xs] : fixed)
    if (m.image(x) != xs) return false;
  return true;
}

Matching from_map(const std::map<Vertex, Vertex>& m) {
  Matching out;
  out.pairs.assign(m.begin(), m.end());
  return out;
}

enum class Pairing { ok, unmatched, collision, no_prime };

struct PairingResult {
  Pairing status = Pairing::unmatched;
  Matching matching;
};

PairingResult pair_by_fingerprint(const std::vector<std::optional<Coords>>& a,
                                  const std::vector<std::optional<Coords>>& b) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] && b[i]) usable.push_back(i);
  if (usable.empty()) return {Pairing::no_prime, {}};
  const auto& va = a[usable[0]]->vertices;
  const auto& vb = b[usable[0]]->vertices;
  if (va.size() != vb.size()) return {Pairing::unmatched, {}};

  auto fingerprint = [&](const std::vector<std::optional<Coords>>& side, std::size_t k) {
    std::vector<Residue> f;
    f.reserve(2 * usable.size());
    for (std::size_t i : usable) {
      f.push_back(side[i]->x[k]);
      f.push_back(side[i]->y[k]);
    }
    return f;
  };
  std::map<std::vector<Residue>, Vertex> by_print;
  for (std::size_t k = 0; k < va.size(); ++k)
    if (!by_print.emplace(fingerprint(a, k), va[k]).second) return {Pairing::collision, {}};
  std::map<Vertex, Vertex> m;
  std::set<Vertex> hit;
  for (std::size_t k = 0; k < vb.size(); ++k) {
    auto it = by_print.find(fingerprint(b, k));
    if (it == by_print.end() || !hit.insert(it->second).second) return {Pairing::unmatched, {}};
    m.emplace(it->second, vb[k]);
  }
  return {Pairing::ok, from_map(m)};
}

std::optional<Matching> cycle_match(const LabelledComponent& c, const LabelledComponent& cs,
                                    std::span<const std::pair<Vertex, Vertex>> fixed) {
  auto order = cycle_order(c.graph);
  auto order_s = cycle_order(cs.graph);
  const int n = static_cast<int>(order.size());
  if (n != static_cast<int>(order_s.size())) return std::nullopt;
  for (int start = 0; start < n; ++start)
    for (int dir : {1, -1}) {
      std::map<Vertex, Vertex> m;
      for (int i = 0; i < n; ++i)
        m.emplace(order[static_cast<std::size_t>(i)], order_s[static_cast<std::size_t>(((start + dir * i) % n + n) % n)]);
      Matching cand = from_map(m);
      if (respects(cand, fixed) && verify_labelled(c, cs, cand)) {
        cand.verified = true;
        return cand;
      }
    }
  return std::nullopt;
}

}  // namespace

std::optional<Vertex> Matching::image(Vertex v) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair<Vertex, Vertex>{v, std::numeric_limits<Vertex>::min()});
  if (it == pairs.end() || it->first != v) return std::nullopt;
  return it->second;
}

bool verify_iso(const Graph& g1, const Graph& g2, const Matching& m) {
  auto a1 = g1.active_vertices();
  auto a2 = g2.active_vertices();
  if (a1.size() != a2.size() || m.pairs.size() != a1.size() || g1.size() != g2.size()) return false;
  std::vector<Vertex> dom, img;
  for (auto [x, y] : m.pairs) {
    dom.push_back(x);
    img.push_back(y);
  }
  std::sort(dom.begin(), dom.end());
  std::sort(img.begin(), img.end());
  if (dom != a1 || img != a2) return false;
  // Equal edge counts plus an injective vertex map: edges to edges forces non-edges to non-edges.
  for (const Edge& e : g1.edges())
    if (!g2.has_edge(*m.image(e.lo), *m.image(e.hi))) return false;
  return true;
}

int LabelledComponent::label(Vertex u, Vertex v) const {
  auto it = labels.find({u, v});
  return it == labels.end() ? 0 : it->second;
}

LabelledComponent plain_component(const Graph& g, bool cycle, const Colouring& colour) {
  LabelledComponent c;
  c.graph = g;
  c.vertices = g.active_vertices();
  c.cycle = cycle;
  c.colour = colour;
  return c;
}

bool verify_labelled(const LabelledComponent& c1, const LabelledComponent& c2, const Matching& m) {
  if (!verify_iso(c1.graph, c2.graph, m)) return false;
  for (auto [x, y] : m.pairs)
    if (c1.colour_of(x) != c2.colour_of(y)) return false;
  for (const Edge& e : c1.graph.edges()) {
    Vertex a = *m.image(e.lo), b = *m.image(e.hi);
    if (c1.label(e.lo, e.hi) != c2.label(a, b) || c1.label(e.hi, e.lo) != c2.label(b, a)) return false;
  }
  return true;
}

// ---- fingerprinter ----

Fingerprinter::Fingerprinter(BundleFamily& family, Exec exec) : family_(&family), exec_(exec) {}
Fingerprinter::Fingerprinter(PoolConfig cfg, Exec exec) : own_(cfg), exec_(exec) {}

std::vector<Residue> Fingerprinter::primes() const { return family_ ? family_->pool().live() : own_.live(); }

void Fingerprinter::refresh() {
  ++stats_.refreshes;
  if (family_)
    family_->refresh();
  else
    own_.refresh();
}

std::vector<const TutteBundle*> Fingerprinter::canonical(const Graph& host) {
  const auto primes_now = primes();
  if (family_) {
    if (const auto* live = family_->bundles(host.active_vertices());
        live && live->size() == primes_now.size() && !live->empty() && live->front().host.edges() == host.edges()) {
      std::vector<const TutteBundle*> out;
      for (const auto& b : *live) out.push_back(&b);
      return out;
    }
  }
  auto key = host.edges();
  auto it = cache_.find(key);
  if (it == cache_.end() || it->second.first != primes_now) {
    if (cache_.size() >= kCacheLimit) cache_.clear();
    const Pins pins = canonical_pins(host);
    std::vector<std::optional<TutteBundle>> slots;
    for (Residue p : primes_now) {
      try {
        slots.emplace_back(bundle_init(host, pins, p, exec_));
      } catch (const NotInvertible&) {
        slots.emplace_back(std::nullopt);
      }
    }
    it = cache_.insert_or_assign(std::move(key), std::pair{primes_now, std::move(slots)}).first;
  }
  std::vector<const TutteBundle*> out;
  for (const auto& slot : it->second.second) out.push_back(slot ? &*slot : nullptr);
  return out;
}

std::vector<std::optional<Coords>> Fingerprinter::coords(const Graph& host, const Pins& pins) {
  std::vector<std::optional<Coords>> out;
  for (const TutteBundle* b : canonical(host)) {
    if (!b) {
      out.emplace_back(std::nullopt);
      continue;
    }
    if (b->pins == pins) {
      out.emplace_back(embed_coords(*b));
      continue;
    }
    try {
      out.emplace_back(embed_coords(smw_pins(*b, pins, exec_)));
    } catch (const NotInvertible&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

// ---- iso3 ----

std::vector<Pins> face_flags(const Graph& c) {
  auto emb = embed_3connected(c);
  std::vector<Pins> out;
  for (const auto& face : emb.faces)
    for (const auto& cyc : {face.cycle, face.reversed().cycle}) {
      const std::size_t k = cyc.size();
      for (std::size_t i = 0; i < k; ++i) out.push_back({cyc[i], cyc[(i + 1) % k], cyc[(i + 2) % k]});
    }
  return out;
}

std::optional<Matching> extract_matching(Fingerprinter& fp, const Graph& c, const Pins& pins, const Graph& cstar,
                                         const Pins& pins_star) {
  if (c.active_vertices().size() != cstar.active_vertices().size()) return std::nullopt;
  auto r = pair_by_fingerprint(fp.coords(c, pins), fp.coords(cstar, pins_star));
  if (r.status == Pairing::no_prime) throw PoolTooSmall("no prime usable on both sides");
  if (r.status != Pairing::ok) return std::nullopt;
  return r.matching;
}

std::optional<Matching> match_exact(const LabelledComponent& c, const LabelledComponent& cs,
                                    std::span<const std::pair<Vertex, Vertex>> fixed) {
  if (c.vertices.size() != cs.vertices.size() || c.graph.size() != cs.graph.size()) return std::nullopt;
  std::map<Vertex, Vertex> fwd, back;
  for (auto [x, y] : fixed) {
    if (!std::binary_search(c.vertices.begin(), c.vertices.end(), x) ||
        !std::binary_search(cs.vertices.begin(), cs.vertices.end(), y))
      return std::nullopt;
    if ((fwd.count(x) && fwd[x] != y) || (back.count(y) && back[y] != x)) return std::nullopt;
    fwd[x] = y;
    back[y] = x;
  }
  // Visit vertices in BFS order from the fixed ones so each has mapped neighbours early.
  std::vector<Vertex> order;
  std::set<Vertex> seen;
  std::vector<Vertex> queue;
  for (auto& [x, y] : fwd) queue.push_back(x);
  for (Vertex v : c.vertices) queue.push_back(v);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<Vertex> frontier{queue[qi]};
    while (!frontier.empty()) {
      Vertex v = frontier.back();
      frontier.pop_back();
      if (!seen.insert(v).second) continue;
      order.push_back(v);
      for (Vertex w : c.graph.neighbours(v))
        if (!seen.count(w)) frontier.insert(frontier.begin(), w);
    }
  }

  auto consistent = [&](Vertex x, Vertex y) {
    if (c.colour_of(x) != cs.colour_of(y) || c.graph.degree(x) != cs.graph.degree(y)) return false;
    for (Vertex w : c.graph.neighbours(x)) {
      auto it = fwd.find(w);
      if (it == fwd.end()) continue;
      if (!cs.graph.has_edge(y, it->second)) return false;
      if (c.label(x, w) != cs.label(y, it->second) || c.label(w, x) != cs.label(it->second, y)) return false;
    }
    return true;
  };
  for (auto [x, y] : fwd)
    if (!consistent(x, y)) return std::nullopt;

  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    while (i < order.size() && fwd.count(order[i])) ++i;
    if (i == order.size()) return true;
    const Vertex x = order[i];
    for (Vertex y : cs.vertices) {
      if (back.count(y) || !consistent(x, y)) continue;
      fwd[x] = y;
      back[y] = x;
      if (extend(i + 1)) return true;
      fwd.erase(x);
      back.erase(y);
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  Matching m = from_map(fwd);
  if (!verify_labelled(c, cs, m)) return std::nullopt;
  m.verified = true;
  return m;
}

bool iso3_query(Fingerprinter& fp, const LabelledComponent& c, const LabelledComponent& cs, const Iso3Query& q,
                Matching* witness) {
  ++fp.stats().queries;
  if (c.cycle != cs.cycle) return false;
  if (c.vertices.size() != cs.vertices.size() || c.graph.size() != cs.graph.size()) return false;
  {
    std::map<Vertex, Vertex> fwd, back;
    for (auto [x, y] : q.fixed) {
      if (!std::binary_search(c.vertices.begin(), c.vertices.end(), x) ||
          !std::binary_search(cs.vertices.begin(), cs.vertices.end(), y))
        return false;
      if (c.colour_of(x) != cs.colour_of(y)) return false;
      auto [it, fresh] = fwd.emplace(x, y);
      auto [jt, fresh2] = back.emplace(y, x);
      if (it->second != y || jt->second != x) return false;
    }
  }
  if (degree_colour_profile(c) != degree_colour_profile(cs) || label_profile(c) != label_profile(cs)) return false;

  auto accept = [&](Matching m) {
    m.verified = true;
    if (witness) *witness = std::move(m);
    return true;
  };

  if (c.cycle) {
    auto m = cycle_match(c, cs, q.fixed);
    return m ? accept(*m) : false;
  }

  // One flag of c is fixed; every isomorphism sends it to some flag of c*.
  auto flags = face_flags(c.graph);
  auto flags_s = face_flags(cs.graph);
  Pins anchor = canonical_pins(c.graph);
  std::optional<Vertex> anchor_image;
  if (!q.fixed.empty()) {
    const Vertex a = q.fixed[0].first;
    anchor_image = q.fixed[0].second;
    std::optional<Vertex> second = q.fixed.size() > 1 ? std::optional<Vertex>(q.fixed[1].first) : std::nullopt;
    auto pick = std::find_if(flags.begin(), flags.end(), [&](const Pins& f) { return f[0] == a && f[1] == second; });
    if (pick == flags.end()) pick = std::find_if(flags.begin(), flags.end(), [&](const Pins& f) { return f[0] == a; });
    anchor = *pick;
  }
  auto fits = [&](const Pins& f) {
    if (anchor_image && f[0] != *anchor_image) return false;
    for (std::size_t k = 0; k < 3; ++k) {
      if (c.colour_of(anchor[k]) != cs.colour_of(f[k]) || c.graph.degree(anchor[k]) != cs.graph.degree(f[k]))
        return false;
      auto img = std::find_if(q.fixed.begin(), q.fixed.end(), [&](auto& pr) { return pr.first == anchor[k]; });
      if (img != q.fixed.end() && img->second != f[k]) return false;
    }
    return true;
  };

  auto prints = fp.coords(c.graph, anchor);
  bool refreshed = false;
  for (const Pins& f : flags_s) {
    if (!fits(f)) continue;
    ++fp.stats().flags_tried;
    auto r = pair_by_fingerprint(prints, fp.coords(cs.graph, f));
    if ((r.status == Pairing::collision || r.status == Pairing::no_prime) && !refreshed) {
      ++fp.stats().collisions;
      refreshed = true;
      fp.refresh();
      prints = fp.coords(c.graph, anchor);
      r = pair_by_fingerprint(prints, fp.coords(cs.graph, f));
    }
    if (r.status == Pairing::ok) {
      if (respects(r.matching, q.fixed) && verify_labelled(c, cs, r.matching)) return accept(std::move(r.matching));
      continue;
    }
    if (r.status == Pairing::unmatched) continue;
    // Fingerprints still ambiguous: settle this flag exactly.
    ++fp.stats().exact_fallbacks;
    std::vector<std::pair<Vertex, Vertex>> fixed(q.fixed.begin(), q.fixed.end());
    for (std::size_t k = 0; k < 3; ++k) fixed.emplace_back(anchor[k], f[k]);
    if (auto m = match_exact(c, cs, fixed)) return accept(std::move(*m));
  }
  return false;
}

}  // namespace dp
