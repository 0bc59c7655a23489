#include <algorithm>
#include <random>

#include "dynplanar/harness.hpp"

namespace dp::harness {

namespace {

// Only the engine's raw output and integer arithmetic are used, so scripts match across platforms.
class Dice {
 public:
  explicit Dice(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t k) { return rng_() % k; }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 rng_;
};

struct Generator {
  const GenOptions& opt;
  Dice dice;
  Graph g;
  int half;
  std::vector<Vertex> mirror_of;  // side 0 -> side 1
  Script script;

  explicit Generator(const GenOptions& o) : opt(o), dice(o.seed), g(o.n), half(o.n / 2) {
    std::vector<Vertex> perm(static_cast<std::size_t>(half));
    for (int i = 0; i < half; ++i) perm[static_cast<std::size_t>(i)] = half + i;
    dice.shuffle(perm);
    mirror_of = perm;
    script.n = o.n;
  }

  int next_line() const { return static_cast<int>(script.items.size()) + 2; }
  Vertex in_side(int side) {
    const int lo = side == 0 ? 0 : half, hi = side == 0 ? half : opt.n;
    return lo + static_cast<Vertex>(dice.below(static_cast<std::uint64_t>(hi - lo)));
  }
  int side_of(Vertex v) const { return v < half ? 0 : 1; }

  void push(Item::Kind k, std::vector<Vertex> args) { script.items.push_back(Item{k, next_line(), std::move(args)}); }

  bool legal(const ChangeEvent& e) {
    if (e.kind == ChangeEvent::Kind::remove) return g.has_edge(e.edge.lo, e.edge.hi);
    if (g.has_edge(e.edge.lo, e.edge.hi)) return false;
    g.add_edge(e.edge.lo, e.edge.hi);
    const bool ok = is_planar(g);
    g.remove_edge(e.edge.lo, e.edge.hi);
    return ok;
  }

  void emit(const ChangeEvent& e) {
    g = apply_change(g, e);
    push(e.kind == ChangeEvent::Kind::insert ? Item::Kind::insert : Item::Kind::remove, {e.edge.lo, e.edge.hi});
  }

  std::optional<ChangeEvent> random_change(int side) {
    std::vector<Edge> mine;
    for (const Edge& e : g.edges())
      if (side_of(e.lo) == side) mine.push_back(e);
    if (!mine.empty() && dice.chance(opt.p_delete)) return ChangeEvent{ChangeEvent::Kind::remove, dice.pick(mine)};
    for (int attempt = 0; attempt < 40; ++attempt) {
      Vertex u = in_side(side), v = in_side(side);
      if (u == v) continue;
      ChangeEvent e{ChangeEvent::Kind::insert, Edge(u, v)};
      if (legal(e)) return e;
    }
    if (!mine.empty()) return ChangeEvent{ChangeEvent::Kind::remove, dice.pick(mine)};
    return std::nullopt;
  }

  std::optional<ChangeEvent> mirrored(const ChangeEvent& e) const {
    auto img = [&](Vertex v) -> std::optional<Vertex> {
      if (v < half) return mirror_of[static_cast<std::size_t>(v)];
      auto it = std::find(mirror_of.begin(), mirror_of.end(), v);
      if (it == mirror_of.end()) return std::nullopt;
      return static_cast<Vertex>(it - mirror_of.begin());
    };
    auto a = img(e.edge.lo), b = img(e.edge.hi);
    if (!a || !b) return std::nullopt;
    return ChangeEvent{e.kind, Edge(*a, *b)};
  }

  Vertex image_or_random(Vertex v) {
    return dice.chance(0.7) && v < half ? mirror_of[static_cast<std::size_t>(v)] : in_side(1);
  }

  void extra_query() {
    switch (dice.below(3)) {
      case 0: {
        Vertex a = in_side(0);
        push(Item::Kind::iso1, {a, image_or_random(a)});
        break;
      }
      case 1: {
        auto blocks = biconnected_blocks(g);
        std::vector<std::vector<Vertex>> left;
        for (auto& b : blocks)
          if (side_of(b[0]) == 0) left.push_back(b);
        if (left.empty()) return;
        const auto& b = dice.pick(left);
        Vertex a = dice.pick(b), c = dice.pick(b);
        if (a == c) return;
        push(Item::Kind::iso2, {a, c, image_or_random(a), image_or_random(c)});
        break;
      }
      default: {
        auto st = build_decomposition(g);
        std::vector<VertexSet> left;
        for (const auto& b : st.blocks)
          if (b.tri && side_of(b.vertices[0]) == 0)
            for (const auto& c : b.tri->components) left.push_back(c.vertices);
        if (left.empty()) return;
        auto vs = dice.pick(left);
        dice.shuffle(vs);
        const Vertex d = dice.pick(vs);
        std::vector<Vertex> args{vs[0], vs[1], vs[2], d};
        std::vector<Vertex> imgs;
        for (Vertex v : args) imgs.push_back(v < half ? mirror_of[static_cast<std::size_t>(v)] : v);
        args.insert(args.end(), imgs.begin(), imgs.end());
        push(Item::Kind::iso3, args);
        break;
      }
    }
  }

  void after_change() {
    if (opt.n >= 2 && dice.chance(opt.query_rate)) {
      Vertex u = in_side(0), v = half > 0 ? in_side(1) : u;
      push(Item::Kind::components, {u, v});
    }
    if (dice.chance(opt.extra_queries)) extra_query();
  }

  Script run() {
    int events = 0;
    while (events < opt.steps) {
      const int side = half > 0 && opt.n - half > 0 ? static_cast<int>(dice.below(2)) : 0;
      auto e = random_change(side);
      if (!e) {
        if (g.size() == 0 && half < 2) break;
        continue;
      }
      emit(*e);
      ++events;
      after_change();
      if (events < opt.steps && dice.chance(opt.mirror)) {
        if (auto m = mirrored(*e); m && legal(*m)) {
          emit(*m);
          ++events;
          after_change();
        }
      }
    }
    return std::move(script);
  }
};

}  // namespace

Script gen_sequence(const GenOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("need at least two vertices");
  Generator gen(opt);
  return gen.run();
}

}  // namespace dp::harness
