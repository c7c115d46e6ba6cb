#include <benchmark/benchmark.h>

#include "floerkit/category.hpp"
#include "floerkit/fieldfun.hpp"
#include "floerkit/quilt.hpp"

using namespace floerkit;

namespace {

RunConfig workers(const benchmark::State& state) {
  RunConfig cfg;
  cfg.workers = unsigned(state.range(0));
  return cfg;
}

void BM_RepvarietyS4Genus2(benchmark::State& state) {
  auto g = std::make_shared<const FiniteGroup>(symmetric_group(4));
  const auto cfg = workers(state);
  for (auto _ : state) benchmark::DoNotOptimize(repvariety(g, BordObject::surface(2), cfg).size());
}
BENCHMARK(BM_RepvarietyS4Genus2)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OracleS4Surface2(benchmark::State& state) {
  const auto g = symmetric_group(4);
  const auto cfg = workers(state);
  for (auto _ : state) benchmark::DoNotOptimize(presentation_oracle(g, Presentation::surface(2), cfg));
}
BENCHMARK(BM_OracleS4Surface2)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ClosedInvariant(benchmark::State& state) {
  const auto fixtures = closed_fixtures();
  const auto& f = fixtures[std::size_t(state.range(0))];
  for (auto _ : state) {
    PartialFunctorSpec spec(quaternion_group());
    benchmark::DoNotOptimize(closed_invariant(spec, f.chain).count());
  }
  state.SetLabel(f.name + " over Q8");
}
BENCHMARK(BM_ClosedInvariant)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_CerfCompatibility(benchmark::State& state) {
  for (auto _ : state) {
    PartialFunctorSpec spec(symmetric_group(3));
    benchmark::DoNotOptimize(verify_cerf_compatibility(spec, int(state.range(0))).failures());
  }
}
BENCHMARK(BM_CerfCompatibility)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GeneratorSet(benchmark::State& state) {
  RepContext ctx(symmetric_group(3));
  const auto l = ctx.attach2(autos::identity(2));
  const auto c = CyclicChain::from_closed(RelationChain::from_steps({l, l.transpose()}));
  const auto cfg = workers(state);
  for (auto _ : state) benchmark::DoNotOptimize(generator_set(c, cfg).size());
}
BENCHMARK(BM_GeneratorSet)->Arg(1)->Arg(4);

void BM_QuiltZigzag(benchmark::State& state) {
  RepContext ctx(symmetric_group(3));
  const auto y = SeamLabel::of(ctx.attach2(autos::identity(2)), "L");
  for (auto _ : state) {
    const auto z = quilt_glue(cap_diagram(y), cup_diagram(y), 1);
    const auto gens = generator_set(end_cyclic_morphism(z, 0));
    std::size_t total = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto t = gens.tuple(i);
      total += quilt_evaluate(z, {{0, Tuple(t.begin(), t.end())}}).size();
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_QuiltZigzag);

void BM_RandomCategoryLaws(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto c = random_finset_category(seed, 5, 40);
    const auto d = random_finset_category(seed + 1000, 2, 8);
    benchmark::DoNotOptimize(functor_category(enumerate_functors(c, d, 4)).category->morphism_count());
    ++seed;
  }
}
BENCHMARK(BM_RandomCategoryLaws);

}  // namespace

BENCHMARK_MAIN();
