#include <benchmark/benchmark.h>

#include "compcat/comprehension.hpp"
#include "compcat/endoalg.hpp"
#include "compcat/fibration.hpp"

using namespace compcat;

static void BM_validate_generated(benchmark::State& state) {
  const auto c = generate_category(7, 8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_category(*c).passed());
  state.counters["morphisms"] = static_cast<double>(c->morphism_count());
}
BENCHMARK(BM_validate_generated)->Arg(8)->Arg(16)->Arg(32);

static void BM_arrow_category(benchmark::State& state) {
  const auto pred = pred_instance(state.range(0) == 2 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(arrow_category(pred.base).arrows()->morphism_count());
}
BENCHMARK(BM_arrow_category)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_pred_instance(benchmark::State& state) {
  std::vector<int> u;
  for (int i = 0; i < state.range(0); ++i) u.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(pred_instance(u).total->morphism_count());
}
BENCHMARK(BM_pred_instance)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_rel_instance(benchmark::State& state) {
  std::vector<int> u;
  for (int i = 0; i < state.range(0); ++i) u.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(rel_instance(u).total->morphism_count());
}
BENCHMARK(BM_rel_instance)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_check_adjunction_pred(benchmark::State& state) {
  const auto pred = pred_instance({0, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(check_adjunction(pred.adj).passed());
}
BENCHMARK(BM_check_adjunction_pred)->Unit(benchmark::kMillisecond);

static void BM_image_coherence_pred(benchmark::State& state) {
  const auto pred = pred_instance({0, 1, 2});
  const auto s = build_image_structure(pred.proj, pred.section);
  for (auto _ : state) benchmark::DoNotOptimize(check_image_coherence(*s).passed());
}
BENCHMARK(BM_image_coherence_pred)->Unit(benchmark::kMillisecond);

static void BM_classify_pred(benchmark::State& state) {
  const auto pred = pred_instance({0, 1});
  const auto arrows = arrow_category(pred.base);
  const auto sd = section_data(pred);
  const auto cs = derive_comprehension_from_section(sd, arrows);
  for (auto _ : state) benchmark::DoNotOptimize(classify_notion(pred.proj, sd, cs).lawvere.verdict);
}
BENCHMARK(BM_classify_pred)->Unit(benchmark::kMillisecond);

static void BM_transport_pow(benchmark::State& state) {
  const auto pow = powerset_instance({0, 1, 2}, {0}, {{0, 1}, {1, 2}});
  const auto sd = section_data(pow);
  const auto dp = distributivity_pair(*pow.endo);
  for (auto _ : state) benchmark::DoNotOptimize(check_transport(sd, dp, Direction::algebra).verdict);
}
BENCHMARK(BM_transport_pow)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
