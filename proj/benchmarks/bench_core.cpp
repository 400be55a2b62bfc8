#include <benchmark/benchmark.h>

#include "cloneval/corpus.hpp"
#include "cloneval/diff.hpp"
#include "cloneval/features.hpp"
#include "cloneval/model.hpp"
#include "cloneval/mutation.hpp"
#include "cloneval/neural_net.hpp"
#include "cloneval/normalize.hpp"

using namespace cloneval;

namespace {

const Benchmark& bench() {
  static const Benchmark b = [] {
    BenchmarkConfig cfg;
    cfg.true_count = 100;
    cfg.false_count = 100;
    return generate_benchmark(load_corpus(CLONEVAL_BENCH_CORPUS_DIR), cfg);
  }();
  return b;
}

void BM_NormalizeAll(benchmark::State& state) {
  const auto& pairs = bench().pairs;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_all(pairs[i++ % pairs.size()].fragment1));
  }
}
BENCHMARK(BM_NormalizeAll);

void BM_LineDiff(benchmark::State& state) {
  const auto& p = bench().pairs.front();
  const auto a = normalize(p.fragment1, NormalizationLevel::kType2);
  const auto b = normalize(p.fragment2, NormalizationLevel::kType2);
  for (auto _ : state) benchmark::DoNotOptimize(edit_script(a.lines, b.lines));
}
BENCHMARK(BM_LineDiff);

void BM_ExtractFeatures(benchmark::State& state) {
  const auto& pairs = bench().pairs;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(pairs[i++ % pairs.size()]));
}
BENCHMARK(BM_ExtractFeatures);

void BM_NeuralNetPredict(benchmark::State& state) {
  const auto model = NeuralNetModel::random({8, 107, 2}, Activation::kSigmoid, 1);
  const FeatureVector x{{0.9, 0.8, 0.7, 0.9, 0.95, 0.6, 0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(x));
}
BENCHMARK(BM_NeuralNetPredict);

void BM_NeuralNetPredictBatch(benchmark::State& state) {
  const auto model = NeuralNetModel::random({8, 107, 2}, Activation::kSigmoid, 1);
  const std::vector<FeatureVector> rows(static_cast<std::size_t>(state.range(0)),
                                        FeatureVector{{0.9, 0.8, 0.7, 0.9, 0.95, 0.6, 0.0, 0.0}});
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(rows));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NeuralNetPredictBatch)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
