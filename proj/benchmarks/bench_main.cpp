#include <benchmark/benchmark.h>

#include "dirca/dirca.hpp"

using namespace dirca;

namespace {

const LocalRule& one_sided() {
  static const auto r = parse_rule("a=2;coeffs=0,1,1");
  return r;
}

void BM_SequenceEngine(benchmark::State& state) {
  const auto n_max = state.range(0);
  const int k = static_cast<int>(state.range(1));
  const bool generic = state.range(2) != 0;
  const auto x = random_digit_stream(1, Modulus(k), required_prefix(1, n_max));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequence_s_engine(x, 1, n_max, IndexVariant::leading, {generic}));
  }
  // cells touched by the triangular sweep
  state.counters["cells"] = benchmark::Counter(static_cast<double>(n_max) * static_cast<double>(n_max) / 2,
                                                benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_SequenceEngine)->Args({5000, 2, 0})->Args({5000, 2, 1})->Args({5000, 3, 0})->Args({100000, 2, 0})
    ->Unit(benchmark::kMillisecond);

void BM_SequenceDirect(benchmark::State& state) {
  const auto n_max = state.range(0);
  const auto x = random_digit_stream(1, Modulus(2), required_prefix(1, n_max));
  for (auto _ : state) benchmark::DoNotOptimize(sequence_s_direct(x, 1, n_max, IndexVariant::leading));
}
BENCHMARK(BM_SequenceDirect)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_ColumnTrace(benchmark::State& state) {
  const auto steps = state.range(0);
  const bool packed = state.range(1) != 0;
  const auto w = sample_config(2, {0, 2 * steps}, Modulus(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(packed ? column_trace_packed(w, one_sided(), steps, 0)
                                    : column_trace_generic(w, one_sided(), steps, 0));
  }
}
BENCHMARK(BM_ColumnTrace)->Args({4096, 1})->Args({4096, 0})->Unit(benchmark::kMillisecond);

void BM_Birkhoff(benchmark::State& state) {
  const auto N = state.range(0);
  const Cylinder b(0, {0}, Modulus(2));
  const auto x = sample_config(3, orbit_support({1, 1}, b, N, one_sided()), Modulus(2));
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_average(x, {1, 1}, b, N, one_sided(), false));
}
BENCHMARK(BM_Birkhoff)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EventMeasure(benchmark::State& state) {
  const bool enumerate = state.range(0) != 0;
  const Cylinder b(-1, {1, 0, 1}, Modulus(2));
  const EventSpec e{{{ActionIndex(0, 0), b}, {ActionIndex(3, 1), b}, {ActionIndex(5, 0), b}}};
  const auto rule90 = parse_rule("a=2;coeffs=1,0,1");
  const auto strategy = enumerate ? MeasureStrategy::enumeration : MeasureStrategy::linear_algebra;
  for (auto _ : state) benchmark::DoNotOptimize(event_measure(e, rule90, kDefaultBudget, strategy));
}
BENCHMARK(BM_EventMeasure)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_JoinEntropy(benchmark::State& state) {
  const auto rule90 = parse_rule("a=2;coeffs=1,0,1");
  const auto s = make_syndetic_sequence(1, state.range(0), AffineRule{});
  for (auto _ : state) benchmark::DoNotOptimize(join_entropy(s, 1, rule90));
}
BENCHMARK(BM_JoinEntropy)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DecayProfile(benchmark::State& state) {
  const Cylinder b(0, {0, 0}, Modulus(2));
  const DirectionCone cone(Rational(1), Rational(2));
  for (auto _ : state) benchmark::DoNotOptimize(decay_profile(b, b, cone, state.range(0), one_sided()));
}
BENCHMARK(BM_DecayProfile)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
