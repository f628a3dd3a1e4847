#include <campana/emit.hpp>
#include <campana/parametrize.hpp>
#include <campana/places.hpp>
#include <campana/tower.hpp>
#include <campana/witness.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace campana;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

void BM_HilbertClosedForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (int i = 0; i < 256; ++i) pairs.push_back({q(long(rng() % 100001) - 50000, 7), q(long(rng() % 99991) + 1, 3)});
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(hilbert(a, b, Place::prime(5)));
  }
}
BENCHMARK(BM_HilbertClosedForm);

void BM_HilbertOracle(benchmark::State& state) {
  const BigInt p(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_oracle(q(2), q(5) * Rational(p), p));
}
BENCHMARK(BM_HilbertOracle)->Arg(3)->Arg(47)->Arg(101);

void BM_Delta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta(q(1155), q(-7, 3)));
}
BENCHMARK(BM_Delta);

void BM_ConstructOmega(benchmark::State& state) {
  PlaceSet S;
  const long primes[] = {2, 3, 5, 7};
  for (long i = 0; i < state.range(0); ++i) S.insert(Place::prime(primes[i]));
  for (auto _ : state) benchmark::DoNotOptimize(construct_omega(S));
}
BENCHMARK(BM_ConstructOmega)->DenseRange(0, 4);

void BM_BuildCampana(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_campana(state.range(0), false));
}
BENCHMARK(BM_BuildCampana)->Arg(2)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EmitJson(benchmark::State& state) {
  Formula f = build_campana(2, false);
  for (auto _ : state) benchmark::DoNotOptimize(emit(f, Format::Json));
}
BENCHMARK(BM_EmitJson)->Unit(benchmark::kMillisecond);

void BM_PipelineWitness(benchmark::State& state) {
  Pipeline p = build_pipeline(3, false);
  NodeId P = combine_many(p.circuit, p.premise_atoms());
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    Assignment v;
    const char* names[8] = {"a", "b", "c", "d", "a'", "b'", "c'", "d'"};
    for (int k = 0; k < 8; k += 2) {
      v[names[k]] = split_parameter(rng, true);
      v[names[k + 1]] = split_parameter(rng, false);
    }
    v["r"] = small_rational(rng, true);
    synthesize_witness(p.circuit, p.disjoint.trace, v, rng);
    synthesize_witness(p.circuit, p.inv_J.trace, v, rng);
    benchmark::DoNotOptimize(p.circuit.vanishes(P, v));
  }
}
BENCHMARK(BM_PipelineWitness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
