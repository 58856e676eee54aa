// Serial vs OpenMP oracle scans on exhaustive (no-witness) searches.
#include <benchmark/benchmark.h>

#include "groupfair/corpus.hpp"
#include "groupfair/oracle.hpp"

using namespace groupfair;

namespace {

// Two identical agents on an odd number of goods: no EF allocation, full scan.
Instance odd_goods(int m) {
  Instance inst;
  inst.num_goods = m;
  inst.agents.assign(2, Valuation::binary(std::vector<Utility>(m, 1)));
  inst.groups = FixedGroups{{{0}, {1}}};
  return inst;
}

void run(benchmark::State& state, Execution mode) {
  const auto inst = odd_goods(static_cast<int>(state.range(0)));
  SearchConstraints cons;
  cons.notion = Notion::ef();
  const SearchOptions opts{mode, 0};
  std::uint64_t examined = 0;
  for (auto _ : state) {
    auto cert = find_fair(inst, cons, opts);
    examined = cert.examined();
    benchmark::DoNotOptimize(examined);
  }
  state.counters["candidates/s"] =
      benchmark::Counter(static_cast<double>(examined) * state.iterations(), benchmark::Counter::kIsRate);
}

void BM_Serial(benchmark::State& s) { run(s, Execution::serial); }
void BM_Parallel(benchmark::State& s) { run(s, Execution::parallel); }

void corpus_scan(benchmark::State& state, Execution mode) {
  const auto entries = corpus();
  const SearchOptions opts{mode, 0};
  for (auto _ : state) {
    for (const auto& e : entries) benchmark::DoNotOptimize(find_fair(e.instance, e.constraints, opts).found());
  }
}

void BM_CorpusSerial(benchmark::State& s) { corpus_scan(s, Execution::serial); }
void BM_CorpusParallel(benchmark::State& s) { corpus_scan(s, Execution::parallel); }

}  // namespace

BENCHMARK(BM_Serial)->DenseRange(15, 21, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->DenseRange(15, 21, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CorpusParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
