#include <random>

#include <benchmark/benchmark.h>

#include "envlab/detectors.hpp"
#include "envlab/envelope_numeric.hpp"
#include "envlab/envelope_symbolic.hpp"
#include "envlab/flow.hpp"

using namespace envlab;

namespace {

FlowSystem flow(FlowKind kind) { return make_flow({kind, FlowParams{}}); }

void BM_AnnulusSemigroup(benchmark::State& state) {
  const auto f = flow(FlowKind::annulus);
  const auto grid = make_grid(f.space().sample_grid(static_cast<int>(state.range(0))).points);
  const auto metric = FunctionMetric::uniform(f.space(), grid);
  for (auto _ : state) {
    auto a = approximate_semigroup(f, metric, 10'000, 0.05, ScanDirections::both);
    benchmark::DoNotOptimize(a.size());
  }
  state.counters["grid"] = double(grid->size());
}
BENCHMARK(BM_AnnulusSemigroup)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TorusSensitivity(benchmark::State& state) {
  const auto f = flow(FlowKind::torus_circle);
  const auto pts = f.space().sample_grid(static_cast<int>(state.range(0))).points;
  for (auto _ : state) {
    auto r = sensitivity(f, pts, 1000, DetectorDefaults::epsilon_ladder());
    benchmark::DoNotOptimize(r.epsilon);
  }
}
BENCHMARK(BM_TorusSensitivity)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Proximality(benchmark::State& state) {
  const auto f = flow(FlowKind::circle_stack);
  const Point x = StackPoint{2, 0.1};
  const Point y = StackPoint{5, 0.7};
  for (auto _ : state) {
    auto rs = proximality(f, x, y, 0.01, state.range(0));
    benchmark::DoNotOptimize(rs.min_value);
  }
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1));
}
BENCHMARK(BM_Proximality)->Range(1 << 10, 1 << 16);

void BM_AnnulusCompose(benchmark::State& state) {
  const AnnulusAlgebra alg;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AnnulusElement> es;
  for (int i = 0; i < 256; ++i) {
    es.push_back(i % 3 == 0 ? AnnulusElement::power(i - 128)
                 : i % 3 == 1 ? AnnulusElement::h1(unit(rng))
                              : AnnulusElement::h2(unit(rng)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    auto c = alg.compose(es[i % 256], es[(i * 7 + 3) % 256]);
    benchmark::DoNotOptimize(c);
    ++i;
  }
}
BENCHMARK(BM_AnnulusCompose);

void BM_OdometerCompose(benchmark::State& state) {
  const OdometerAlgebra alg(20);
  std::uint64_t v = 12345;
  for (auto _ : state) {
    auto c = alg.compose({v, 20}, {(v * 3 + 1) & 0xFFFFF, 20});
    v = (c.value ^ 0x55) & 0xFFFFF;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_OdometerCompose);

}  // namespace
BENCHMARK_MAIN();
