#include <algorithm>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dynplanar/harness.hpp"
#include "dynplanar/oracle.hpp"

namespace dp::harness {

namespace {

class FaultGuard {
 public:
  explicit FaultGuard(bool on) : was_(smw_fault()) { set_smw_fault(on); }
  ~FaultGuard() { set_smw_fault(was_); }
  FaultGuard(const FaultGuard&) = delete;
  FaultGuard& operator=(const FaultGuard&) = delete;

 private:
  bool was_;
};

std::vector<Vertex> block_with(const Graph& g, Vertex a, Vertex b) {
  auto blocks = biconnected_blocks(g);
  std::vector<std::vector<Vertex>> hits;
  for (auto& bl : blocks)
    if (std::binary_search(bl.begin(), bl.end(), a) && std::binary_search(bl.begin(), bl.end(), b))
      hits.push_back(bl);
  return hits.size() == 1 ? hits[0] : std::vector<Vertex>{};
}

// nullopt when the query's precondition fails.
std::optional<bool> oracle_answer(const Graph& g, const Item& q) {
  const auto& a = q.args;
  switch (q.kind) {
    case Item::Kind::components:
      return oracle::oracle_iso(g, component_of(g, a[0]), g, component_of(g, a[1])).has_value();
    case Item::Kind::iso1:
      return oracle::oracle_iso(g, component_of(g, a[0]), g, component_of(g, a[1]), {{a[0], a[1]}}).has_value();
    case Item::Kind::iso2: {
      auto b1 = block_with(g, a[0], a[1]), b2 = block_with(g, a[2], a[3]);
      if (b1.empty() || b2.empty()) return std::nullopt;
      return oracle::oracle_iso(g, b1, g, b2, {{a[0], a[2]}, {a[1], a[3]}}).has_value();
    }
    case Item::Kind::iso3: {
      auto side = [&](std::size_t at) -> std::optional<Graph> {
        auto bl = block_with(g, a[at], a[at + 1]);
        if (bl.empty()) return std::nullopt;
        auto spqr = oracle::oracle_spqr(g.restricted_to(bl));
        for (const auto& c : spqr.components) {
          bool all = true;
          for (std::size_t i = at; i < at + 4; ++i)
            all = all && std::binary_search(c.vertices.begin(), c.vertices.end(), a[i]);
          if (!all) continue;
          Graph h(g.order());
          for (auto [x, y] : c.edges)
            if (!h.has_edge(x, y)) h.add_edge(x, y);
          return h;
        }
        return std::nullopt;
      };
      auto c1 = side(0), c2 = side(4);
      if (!c1 || !c2) return std::nullopt;
      std::vector<std::pair<Vertex, Vertex>> fixed;
      for (std::size_t i = 0; i < 4; ++i) fixed.emplace_back(a[i], a[i + 4]);
      return oracle::oracle_iso(*c1, c1->active_vertices(), *c2, c2->active_vertices(), fixed).has_value();
    }
    default:
      return std::nullopt;
  }
}

void diff_bundles(const Engine& eng, int line, Report& r) {
  const auto& fam = eng.family();
  const auto& primes = fam.pool().live();
  // Host set must match the scratch decomposition.
  auto scratch = build_decomposition(eng.state().graph);
  std::vector<VertexSet> want;
  for (const auto& b : scratch.blocks)
    if (b.tri)
      for (const auto& c : b.tri->components)
        if (!c.cycle) want.push_back(c.vertices);
  std::sort(want.begin(), want.end());
  std::vector<VertexSet> have;
  for (const auto& [key, bundles] : fam.hosts()) have.push_back(key);
  if (have != want) r.diffs.push_back(fmt::format("line {}: bundle hosts differ from the live components", line));

  for (const auto& [key, bundles] : fam.hosts()) {
    if (bundles.size() != primes.size()) {
      r.diffs.push_back(fmt::format("line {}: host {} has {} bundles for {} primes", line, key, bundles.size(),
                                    primes.size()));
      continue;
    }
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      ++r.bundle_checks;
      const auto& b = bundles[i];
      bool same = false;
      try {
        same = b == bundle_init(b.host, b.pins, primes[i], Exec::serial);
      } catch (const NotInvertible&) {
      }
      if (!same) r.diffs.push_back(fmt::format("line {}: bundle of host {} mod {} differs from direct inversion", line, key, primes[i]));
    }
  }
}

// Adversarial prime loss: drop the oldest live primes until the family refreshes.
void force_refresh(BundleFamily& fam) {
  const int before = fam.pool().refresh_count();
  while (fam.pool().refresh_count() == before && !fam.pool().live().empty()) fam.drop_prime(fam.pool().live().front());
}

}  // namespace

Report check(const Script& s, const CheckOptions& opts) {
  FaultGuard fault(opts.fault);
  Report r;
  Engine eng(s.n, opts.run);
  int changes = 0;
  for (const Item& it : s.items) {
    TraceLine tl;
    tl.line = it.line;
    tl.kind = std::string(kind_name(it.kind));
    if (it.is_change()) {
      try {
        ChangeEvent e{it.kind == Item::Kind::insert ? ChangeEvent::Kind::insert : ChangeEvent::Kind::remove,
                      Edge(it.args[0], it.args[1])};
        tl.change_type = eng.apply(e).str();
      } catch (const NonPlanarResult& ex) {
        tl.note = fmt::format("non-planar: {}", ex.what());
      } catch (const IllegalChange& ex) {
        tl.note = fmt::format("illegal: {}", ex.what());
      }
      if (tl.note.empty()) {
        if (opts.drop_every > 0 && ++changes % opts.drop_every == 0) force_refresh(eng.family());
        ++r.scratch_checks;
        auto scratch = build_decomposition(eng.state().graph);
        if (auto d = describe_difference(eng.state(), scratch); !d.empty())
          r.diffs.push_back(fmt::format("line {}: decomposition: {}", it.line, d));
        if (opts.bundles) diff_bundles(eng, it.line, r);
      }
    } else {
      std::optional<bool> got;
      try {
        got = eng.answer(it);
      } catch (const std::invalid_argument& ex) {
        tl.note = fmt::format("precondition: {}", ex.what());
      }
      ++r.oracle_queries;
      auto want = oracle_answer(eng.state().graph, it);
      tl.answer = got;
      if (got != want)
        r.diffs.push_back(fmt::format("line {}: {} answered {} but the oracle says {}", it.line, tl.kind,
                                      got ? (*got ? "YES" : "NO") : "error", want ? (*want ? "YES" : "NO") : "error"));
    }
    tl.drops = eng.family().pool().drop_count();
    tl.refreshes = eng.family().pool().refresh_count();
    if (!tl.note.empty() && it.is_change() && opts.run.mode == Mode::strict) {
      r.aborted = true;
      r.abort_line = it.line;
      r.abort_reason = tl.note;
      r.trace.push_back(std::move(tl));
      break;
    }
    r.trace.push_back(std::move(tl));
  }
  return r;
}

}  // namespace dp::harness
