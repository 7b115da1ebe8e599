// Serial reference vs OpenMP log-weight kernels, plus full sweeps.
//
//   kernel_bench --benchmark_filter=Gpm

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/gpm.hpp"
#include "gpmtm/gsdmm.hpp"
#include "gpmtm/kernels.hpp"
#include "gpmtm/sampler_state.hpp"

namespace {

using namespace gpmtm;

constexpr std::size_t kVocab = 5000;
constexpr std::size_t kDocs = 5000;

// Short-text shaped corpus: ~15 distinct words per document.
Corpus synthetic_corpus(bool normalized) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<WordId> word(0, kVocab - 1);
  std::uniform_int_distribution<int> len(10, 20);
  std::vector<Document> docs;
  for (std::size_t m = 0; m < kDocs; ++m) {
    std::map<WordId, int> counts;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) ++counts[word(rng)];
    std::vector<WordCount> entries;
    for (auto [w, c] : counts) entries.push_back({w, c});
    docs.push_back(Document::from_entries(std::move(entries)));
  }
  std::vector<std::string> terms;
  for (std::size_t v = 0; v < kVocab; ++v) terms.push_back("w" + std::to_string(v));
  Corpus raw(std::move(docs), Vocabulary(std::move(terms)));
  return normalized ? normalize_lengths(raw, 20) : raw;
}

const Corpus& normalized_corpus() {
  static const Corpus c = synthetic_corpus(true);
  return c;
}

const Corpus& raw_corpus() {
  static const Corpus c = synthetic_corpus(false);
  return c;
}

template <class Kernel, class Params>
void run_kernel(benchmark::State& bench, const Corpus& corpus, Kernel kernel, Params params) {
  const auto K = static_cast<std::size_t>(bench.range(0));
  auto state = init_uniform_state(corpus, K, 7);
  state.remove_document(0, corpus.doc(0));
  std::vector<double> out(K);
  for (auto _ : bench) {
    kernel(state, corpus.doc(0), params, out);
    benchmark::DoNotOptimize(out.data());
  }
  bench.SetItemsProcessed(bench.iterations() * static_cast<std::int64_t>(K));
}

void BM_GpmReference(benchmark::State& s) {
  run_kernel(s, normalized_corpus(), kernels::gpm_log_weights_reference,
             kernels::GpmParams{0.001, 0.001, 0.1});
}
void BM_GpmParallel(benchmark::State& s) {
  run_kernel(s, normalized_corpus(), kernels::gpm_log_weights, kernels::GpmParams{0.001, 0.001, 0.1});
}
void BM_GsdmmReference(benchmark::State& s) {
  run_kernel(s, raw_corpus(), kernels::gsdmm_log_weights_reference, kernels::GsdmmParams{0.1, 0.1});
}
void BM_GsdmmParallel(benchmark::State& s) {
  run_kernel(s, raw_corpus(), kernels::gsdmm_log_weights, kernels::GsdmmParams{0.1, 0.1});
}

BENCHMARK(BM_GpmReference)->Arg(50)->Arg(400)->Arg(800);
BENCHMARK(BM_GpmParallel)->Arg(50)->Arg(400)->Arg(800);
BENCHMARK(BM_GsdmmReference)->Arg(50)->Arg(400)->Arg(800);
BENCHMARK(BM_GsdmmParallel)->Arg(50)->Arg(400)->Arg(800);

void BM_GpmSweep(benchmark::State& bench) {
  const auto& corpus = normalized_corpus();
  Hyperparams h;
  h.k_init = static_cast<int>(bench.range(0));
  auto state = init_state(corpus, h);
  for (auto _ : bench) gibbs_sweep(state, corpus, h);
  bench.SetItemsProcessed(bench.iterations() * static_cast<std::int64_t>(corpus.num_docs()));
}
BENCHMARK(BM_GpmSweep)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_GsdmmSweep(benchmark::State& bench) {
  const auto& corpus = raw_corpus();
  GsdmmHyperparams h;
  h.k_init = static_cast<int>(bench.range(0));
  auto state = init_state(corpus, h);
  for (auto _ : bench) gibbs_sweep(state, corpus, h);
  bench.SetItemsProcessed(bench.iterations() * static_cast<std::int64_t>(corpus.num_docs()));
}
BENCHMARK(BM_GsdmmSweep)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
