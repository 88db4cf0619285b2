#include <benchmark/benchmark.h>

#include "finnet/discretize.hpp"
#include "finnet/infoflow.hpp"
#include "finnet/kmdrift.hpp"
#include "finnet/random.hpp"
#include "finnet/stats.hpp"
#include "finnet/synth.hpp"

using namespace finnet;

namespace {

Matrix noise(std::size_t rows, std::size_t cols) {
  Rng rng(1);
  Matrix m(rows, cols);
  for (auto& v : m.data()) v = rng.normal();
  return m;
}

void BM_BinSeries(benchmark::State& state) {
  const auto col = noise(static_cast<std::size_t>(state.range(0)), 1).column(0);
  for (auto _ : state) benchmark::DoNotOptimize(bin_series(col, 8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BinSeries)->Arg(2500)->Arg(100000);

void BM_TransferEntropy(benchmark::State& state) {
  const auto chain = gen_coupled_binary(0.1, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_entropy(chain.x, chain.y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransferEntropy)->Arg(100000)->Arg(1000000);

void BM_TeMatrix(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix m = noise(2500, n);
  std::vector<SymbolSequence> series;
  std::vector<std::string> ids;
  for (std::size_t c = 0; c < n; ++c) {
    series.push_back(bin_series(m.column(c), 8));
    ids.push_back("a" + std::to_string(c));
  }
  TeMatrixOptions opts;
  opts.surrogates = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(te_matrix(series, ids, opts));
}
BENCHMARK(BM_TeMatrix)->Args({4, 0})->Args({4, 20})->Args({16, 0});

void BM_KmDrift(benchmark::State& state) {
  const auto r = make_returns(noise(static_cast<std::size_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_drift(r));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KmDrift)->Arg(2500)->Arg(1000000);

void BM_GenOu(benchmark::State& state) {
  const Matrix a{{-0.5, 0.2}, {0.0, -0.3}};
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_ou(a, 0.1, 0.01, static_cast<std::size_t>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenOu)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
