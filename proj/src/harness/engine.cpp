#include <algorithm>
#include <fmt/format.h>

#include "dynplanar/harness.hpp"

namespace dp::harness {

Engine::Engine(int n, const Options& opts)
    : state_(build_decomposition(Graph(n))), family_(opts.pool, opts.exec), fp_(family_, opts.exec) {
  family_.sync(state_);
}

ChangeType Engine::apply(const ChangeEvent& e) {
  const bool present = state_.graph.has_edge(e.edge.lo, e.edge.hi);
  if (e.kind == ChangeEvent::Kind::insert && present) throw IllegalChange("edge already present");
  if (e.kind == ChangeEvent::Kind::remove && !present) throw IllegalChange("edge not present");
  const ChangeType t = classify_change(state_, e);
  DecompositionState after = update_decomposition(state_, e, t);
  family_.coherent_update(state_, after, e, t);
  state_ = std::move(after);
  session_.reset();
  return t;
}

IsoSession& Engine::session() {
  if (!session_) session_.emplace(state_, fp_);
  return *session_;
}

std::optional<LabelledComponent> named_component(const DecompositionState& state, std::span<const Vertex> vs) {
  VertexSet want(vs.begin(), vs.end());
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  for (const auto& b : state.blocks) {
    if (!b.tri) continue;
    for (std::size_t i = 0; i < b.tri->components.size(); ++i) {
      const auto& c = b.tri->components[i];
      if (std::includes(c.vertices.begin(), c.vertices.end(), want.begin(), want.end()))
        return plain_component(b.tri->component_graph(state.graph, static_cast<int>(i)), c.cycle);
    }
  }
  return std::nullopt;
}

bool Engine::answer(const Item& q, Matching* witness) {
  const auto& a = q.args;
  switch (q.kind) {
    case Item::Kind::components:
      return session().components_isomorphic(a[0], a[1]);
    case Item::Kind::iso1:
      return session().iso1_query(a[0], a[1]);
    case Item::Kind::iso2:
      return session().iso2_query(a[0], a[1], a[2], a[3]);
    case Item::Kind::iso3: {
      auto c = named_component(state_, std::span(a).first(4));
      auto cs = named_component(state_, std::span(a).subspan(4, 4));
      if (!c || !cs) throw std::invalid_argument("no triconnected component holds the named vertices");
      Iso3Query iq;
      for (std::size_t i = 0; i < 4; ++i) iq.fixed.emplace_back(a[i], a[i + 4]);
      return iso3_query(fp_, *c, *cs, iq, witness);
    }
    default:
      throw std::logic_error("not a query");
  }
}

Report replay(const Script& s, const Options& opts) {
  Report r;
  Engine eng(s.n, opts);
  for (const Item& it : s.items) {
    TraceLine tl;
    tl.line = it.line;
    tl.kind = std::string(kind_name(it.kind));
    try {
      if (it.is_change()) {
        ChangeEvent e{it.kind == Item::Kind::insert ? ChangeEvent::Kind::insert : ChangeEvent::Kind::remove,
                      Edge(it.args[0], it.args[1])};
        tl.change_type = eng.apply(e).str();
      } else {
        Matching m;
        const bool want_witness = opts.witness && it.kind == Item::Kind::iso3;
        tl.answer = eng.answer(it, want_witness ? &m : nullptr);
        if (want_witness && *tl.answer) tl.witness = m;
      }
    } catch (const NonPlanarResult& ex) {
      tl.note = fmt::format("non-planar: {}", ex.what());
    } catch (const IllegalChange& ex) {
      tl.note = fmt::format("illegal: {}", ex.what());
    } catch (const std::invalid_argument& ex) {
      tl.note = fmt::format("precondition: {}", ex.what());
    }
    tl.drops = eng.family().pool().drop_count();
    tl.refreshes = eng.family().pool().refresh_count();
    // Queries with a failed precondition carry a note and no answer; only changes abort.
    const bool failed = !tl.note.empty() && it.is_change();
    if (failed && opts.mode == Mode::strict) {
      r.aborted = true;
      r.abort_line = it.line;
      r.abort_reason = tl.note;
      r.trace.push_back(std::move(tl));
      break;
    }
    if (failed) tl.note = "skipped, " + tl.note;
    r.trace.push_back(std::move(tl));
  }
  return r;
}

}  // namespace dp::harness
