#include <random>

#include <benchmark/benchmark.h>

#include "support/fixtures.hpp"
#include "xmap/io.hpp"
#include "xmap/viz.hpp"

namespace {

using namespace xmap;
namespace t = xmap::test;

Crossmap large_map(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return build_crossmap("SRC", "TGT", t::random_links(rng, t::labels("s", n), t::labels("t", n), {}));
}

void BM_Build(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto links = t::random_links(rng, t::labels("s", state.range(0)), t::labels("t", state.range(0)), {});
  for (auto _ : state) benchmark::DoNotOptimize(build_crossmap("SRC", "TGT", links));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(links.size()));
}
BENCHMARK(BM_Build)->Range(64, 16384);

void BM_Apply(benchmark::State& state) {
  const auto c = large_map(state.range(0), 2);
  std::mt19937_64 rng(3);
  const auto s = t::random_series(rng, c);
  for (auto _ : state) benchmark::DoNotOptimize(apply(c, s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.links().size()));
}
BENCHMARK(BM_Apply)->Range(64, 16384);

void BM_Compose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  const auto a = build_crossmap("A", "B", t::random_links(rng, t::labels("a", n), t::labels("b", n), {}));
  std::vector<std::string> mid;
  for (const auto& l : a.targets()) mid.push_back(l.str());
  const auto b = build_crossmap("B", "C", t::random_links(rng, mid, t::labels("c", n), {}));
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose)->Range(64, 8192);

void BM_EdgeListRoundTrip(benchmark::State& state) {
  const auto c = large_map(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(io::read_edge_list(io::write_edge_list(c), "SRC", "TGT"));
}
BENCHMARK(BM_EdgeListRoundTrip)->Range(64, 8192);

void BM_LayoutBipartite(benchmark::State& state) {
  const auto c = large_map(state.range(0), 6);
  for (auto _ : state) benchmark::DoNotOptimize(viz::layout_bipartite(c));
}
BENCHMARK(BM_LayoutBipartite)->Range(64, 4096);

void BM_LayoutChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  const auto a = build_crossmap("A", "B", t::random_links(rng, t::labels("a", n), t::labels("b", n), {}));
  std::vector<std::string> mid;
  for (const auto& l : a.targets()) mid.push_back(l.str());
  const MultiStepChain chain({a, build_crossmap("B", "C", t::random_links(rng, mid, t::labels("c", n), {}))});
  for (auto _ : state) benchmark::DoNotOptimize(viz::layout_chain(chain));
}
BENCHMARK(BM_LayoutChain)->Range(64, 2048);

void BM_RenderSvg(benchmark::State& state) {
  const auto c = large_map(state.range(0), 8);
  const auto plan = viz::layout_bipartite(c);
  for (auto _ : state) benchmark::DoNotOptimize(viz::render_svg(plan, c));
}
BENCHMARK(BM_RenderSvg)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
