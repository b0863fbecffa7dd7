// Serial reference against the OpenMP witness search: early hits, full scans
// without a witness, and a sweep over Affine(m).

#include <benchmark/benchmark.h>

#include "hnnkit/parse.hpp"
#include "hnnkit/presentation.hpp"
#include "hnnkit/quotients.hpp"

namespace {

using namespace hnnkit;

FinitePresentation square_conj_group() {
  return to_finite_presentation(parse_presentation_spec("gens: a t\nrel: t^2 a t^-2 = a^2"));
}

// Baumslag-Solitar BS(2,3): a^2 and a^3 conjugate, so a survives only in
// quotients where the search has to scan many branches.
FinitePresentation bs23() { return to_finite_presentation(parse_presentation_spec("gens: a t\nrel: t a^2 t^-1 = a^3")); }

void run_search(benchmark::State& state, const FinitePresentation& pres, const char* target, TargetGroup group,
                bool restrict, Execution exec) {
  const FreeWord w = parse_word(target, pres.alphabet);
  const WitnessSearch search(pres, w, group, restrict);
  for (auto _ : state) benchmark::DoNotOptimize(search.search(exec));
  state.counters["branches"] = static_cast<double>(search.branch_count());
}

void BM_Sym6SquareConj(benchmark::State& s, Execution e) {
  run_search(s, square_conj_group(), "t a t^-1 a^-1", {TargetFamily::Symmetric, 6}, true, e);
}
void BM_Sym6BS23(benchmark::State& s, Execution e) {
  run_search(s, bs23(), "t a t^-1 a^-1", {TargetFamily::Symmetric, 6}, true, e);
}
void BM_Affine60BS23(benchmark::State& s, Execution e) {
  run_search(s, bs23(), "t a t^-1 a^-1", {TargetFamily::Affine, 60}, false, e);
}
// The target is a relator, so no witness exists and every branch is scanned.
void BM_Sym6Exhaustive(benchmark::State& s, Execution e) {
  run_search(s, square_conj_group(), "t^2 a t^-2 a^-2", {TargetFamily::Symmetric, 6}, true, e);
}
void BM_Affine60Exhaustive(benchmark::State& s, Execution e) {
  run_search(s, bs23(), "t a^2 t^-1 a^-3", {TargetFamily::Affine, 60}, false, e);
}
void BM_AffineSweep(benchmark::State& s, Execution e) {
  const auto pres = bs23();
  const FreeWord w = parse_word("t a t^-1 a^-1", pres.alphabet);
  for (auto _ : s) benchmark::DoNotOptimize(affine_witness(pres, w, 40, e));
}

BENCHMARK_CAPTURE(BM_Sym6SquareConj, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sym6SquareConj, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sym6BS23, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sym6BS23, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Affine60BS23, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Affine60BS23, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sym6Exhaustive, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sym6Exhaustive, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Affine60Exhaustive, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Affine60Exhaustive, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_AffineSweep, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_AffineSweep, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
