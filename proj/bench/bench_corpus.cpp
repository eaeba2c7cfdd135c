// Serial reference runner against the OpenMP runner on the same corpora.
#include <benchmark/benchmark.h>

#include "virasoro/verify.hpp"

using namespace vir;

namespace {

CorpusSpec triple() {
  CorpusSpec s;
  s.kinds = {CorpusKind::finitized};
  s.max_pp = 9;
  s.max_L = 12;
  return s;
}

CorpusSpec characters() {
  CorpusSpec s;
  s.kinds = {CorpusKind::character, CorpusKind::product};
  s.max_pp = 12;
  s.order = 41;
  return s;
}

void check(benchmark::State& state, const std::vector<VerifyReport>& reps) {
  for (const auto& r : reps)
    if (!r.equal()) state.SkipWithError(("failing case " + case_label(r.id)).c_str());
  state.counters["cases"] = static_cast<double>(reps.size());
}

void BM_triple_serial(benchmark::State& state) {
  auto spec = triple();
  for (auto _ : state) {
    auto reps = run_serial(spec);
    check(state, reps);
    benchmark::DoNotOptimize(reps);
  }
}

void BM_triple_parallel(benchmark::State& state) {
  auto spec = triple();
  state.counters["workers"] = available_workers();
  for (auto _ : state) {
    auto reps = run_parallel(spec, 0);
    check(state, reps);
    benchmark::DoNotOptimize(reps);
  }
}

void BM_characters_serial(benchmark::State& state) {
  auto spec = characters();
  for (auto _ : state) {
    auto reps = run_serial(spec);
    check(state, reps);
    benchmark::DoNotOptimize(reps);
  }
}

void BM_characters_parallel(benchmark::State& state) {
  auto spec = characters();
  state.counters["workers"] = available_workers();
  for (auto _ : state) {
    auto reps = run_parallel(spec, 0);
    check(state, reps);
    benchmark::DoNotOptimize(reps);
  }
}

}  // namespace

BENCHMARK(BM_triple_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_triple_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_characters_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_characters_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
