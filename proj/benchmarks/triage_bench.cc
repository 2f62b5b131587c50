#include <benchmark/benchmark.h>

#include "essmart/pipeline/pipeline.h"
#include "essmart/service/service.h"
#include "essmart/synthetic.h"
#include "essmart/triage/triage.h"

namespace {

using namespace essmart;

pipeline::TrainingCorpus make_corpus(std::size_t n) {
  synthetic::Params p;
  p.requests = n;
  return synthetic::generate(p);
}

void BM_TrainEscalation(benchmark::State& state) {
  const auto corpus = make_corpus(state.range(0));
  const auto family = static_cast<learners::Family>(state.range(1));
  triage::TrainOptions opts;
  opts.grid = learners::ParamGrid{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(triage::train_escalation(
        corpus.requests, triage::default_recipe(triage::Task::kEscalation), family, 42, opts));
  }
  state.SetLabel(std::string(learners::to_string(family)));
}
BENCHMARK(BM_TrainEscalation)
    ->ArgsProduct({{100, 300},
                   {static_cast<int>(learners::Family::kNaiveBayes),
                    static_cast<int>(learners::Family::kSvm),
                    static_cast<int>(learners::Family::kRandomForest)}})
    ->Unit(benchmark::kMillisecond);

void BM_ProcessRequest(benchmark::State& state) {
  static const auto corpus = make_corpus(150);
  static const auto bundle =
      pipeline::train_all(corpus, pipeline::PipelineConfig::defaults(), 42);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pipeline::process_request(bundle, corpus.requests[i++ % corpus.requests.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ProcessRequest)->Unit(benchmark::kMicrosecond);

void BM_WordDiff(benchmark::State& state) {
  std::string a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a += "word" + std::to_string(i % 7) + " ";
    b += "word" + std::to_string(i % 5) + " ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(service::word_diff(a, b));
}
BENCHMARK(BM_WordDiff)->Range(8, 256);

}  // namespace
