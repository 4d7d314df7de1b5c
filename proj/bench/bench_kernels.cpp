// Serial reference against the OpenMP kernels on the word-parallel checks.
// The second argument of every benchmark selects the kernel: 0 serial, 1 OpenMP.

#include <benchmark/benchmark.h>

#include "qsp/calculus.hpp"
#include "qsp/hopf.hpp"
#include "qsp/session.hpp"
#include "qsp/vfields.hpp"

namespace {

qsp::Session& session() {
  static qsp::Session s;
  return s;
}

qsp::Execution kernel(const benchmark::State& state) {
  return state.range(1) == 0 ? qsp::Execution::serial : qsp::Execution::parallel;
}

void BM_Confluence(benchmark::State& state) {
  const auto& rs = session().rules("OpAlgebra");
  for (auto _ : state) benchmark::DoNotOptimize(qsp::check_confluence(rs, kernel(state)).overlaps);
}

void BM_HopfAxioms(benchmark::State& state) {
  const auto& hs = session().hopf("Gamma");
  const auto cutoff = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qsp::check_hopf_axioms(hs, cutoff, kernel(state)).passed());
}

void BM_DSquared(benchmark::State& state) {
  const auto& g = session().calculus("Gamma");
  const auto words = g.rules().basis(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = qsp::map_words(kernel(state), words, [&](const qsp::Word& w) {
      return static_cast<int>(g.d(g.d(qsp::Element::word(w))).is_zero());
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["words"] = static_cast<double>(words.size());
}

void BM_VectorFieldAlgebra(benchmark::State& state) {
  static const qsp::VectorFields vf(session().rules("L"));
  const auto cutoff = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qsp::check_vf_algebra(vf, cutoff, kernel(state)).size());
}

}  // namespace

BENCHMARK(BM_Confluence)->ArgsProduct({{0}, {0, 1}});
BENCHMARK(BM_HopfAxioms)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DSquared)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VectorFieldAlgebra)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
