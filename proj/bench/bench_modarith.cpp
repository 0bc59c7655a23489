#include <benchmark/benchmark.h>

#include <random>

#include "dynplanar/modarith.hpp"

using namespace dp;

namespace {

constexpr Residue kP = 1048583;

ZpMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ZpMatrix m(kP, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rng() % kP;
  return m;
}

// Grid-like planar host: a wheel keeps it 3-connected at every size.
Graph wheel(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i + 1 < n ? i + 1 : 1);
  }
  return g;
}

void invert(benchmark::State& st, Exec exec) {
  ZpMatrix m = random_matrix(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(invert_gauss(m, exec));
}

void edge_update(benchmark::State& st, Exec exec) {
  Graph g = wheel(static_cast<int>(st.range(0)));
  TutteBundle b = bundle_init(g, {0, 1, 2}, kP, Exec::serial);
  for (auto _ : st) benchmark::DoNotOptimize(smw_edge(b, Edge(3, 4), EdgeDir::remove, exec));
}

void family_sync(benchmark::State& st, Exec exec) {
  Graph g = wheel(static_cast<int>(st.range(0)));
  DecompositionState s = build_decomposition(g);
  for (auto _ : st) {
    BundleFamily fam(PoolConfig{}, exec);
    fam.sync(s);
    benchmark::DoNotOptimize(fam.hosts().size());
  }
}

}  // namespace

BENCHMARK_CAPTURE(invert, parallel, Exec::parallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(invert, serial, Exec::serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(edge_update, parallel, Exec::parallel)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(edge_update, serial, Exec::serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(family_sync, parallel, Exec::parallel)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(family_sync, serial, Exec::serial)->Arg(16)->Arg(48);

BENCHMARK_MAIN();
