#pragma once

// Sweep and fit loop shared by GPM and GSDMM. Only the log-weight kernel and
// the topic estimator differ between the two models.

#include <chrono>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/error.hpp"
#include "gpmtm/fit_result.hpp"
#include "gpmtm/math.hpp"
#include "gpmtm/sampler_state.hpp"

namespace gpmtm::detail {

inline void require_excluded(const SamplerState& state, const Corpus& corpus, std::size_t m) {
  GPMTM_CHECK(m < corpus.num_docs(), "document index out of range");
  GPMTM_CHECK(state.num_docs() == corpus.num_docs(), "state does not match corpus");
  GPMTM_CHECK(state.assigned_docs() + 1 == corpus.num_docs() &&
                  state.topic_of(m) == kUnassigned,
              "document must be excluded from the counts before computing its conditional");
}

class SweepWorkspace {
 public:
  explicit SweepWorkspace(std::size_t K) : weights_(K), scratch_(K) {}

  // Kernel signature: void(const SamplerState&, const Document&, std::span<double>)
  template <class Kernel>
  void sweep(SamplerState& state, const Corpus& corpus, Kernel&& kernel) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t m = 0; m < corpus.num_docs(); ++m) {
      const Document& doc = corpus.doc(m);
      state.remove_document(m, doc);
      kernel(state, doc, std::span<double>(weights_));
      const double u = unif(state.rng());
      const auto k = sample_from_log_weights(weights_, u, scratch_);
      state.add_document(m, doc, static_cast<TopicId>(k));
    }
  }

 private:
  std::vector<double> weights_;
  std::vector<double> scratch_;
};

template <class Kernel, class Estimator>
FitResult run_fit(std::string model, const Corpus& corpus, SamplerState state, int iterations,
                  std::uint64_t seed, std::vector<std::pair<std::string, double>> echo,
                  const FitOptions& options, Kernel&& kernel, Estimator&& estimator) {
  const auto start = std::chrono::steady_clock::now();
  FitResult result;
  result.model = std::move(model);
  result.seed = seed;
  result.hyperparams = std::move(echo);
  result.trace.reserve(static_cast<std::size_t>(iterations));

  if (options.on_sweep) options.on_sweep(0, state);
  SweepWorkspace workspace(state.num_topics());
  for (int it = 1; it <= iterations; ++it) {
    workspace.sweep(state, corpus, kernel);
    TraceRecord rec;
    rec.iteration = it;
    rec.nonempty_topics = state.nonempty_topics();
    if (options.iteration_scorer) rec.avg_coherence = options.iteration_scorer(state);
    result.trace.push_back(rec);
    if (options.on_sweep) options.on_sweep(it, state);
  }

  result.assignments.assign(state.assignments().begin(), state.assignments().end());
  result.topic_doc_counts.assign(state.doc_counts().begin(), state.doc_counts().end());
  result.nonempty_topics = count_nonempty(result.topic_doc_counts);
  result.rates = estimator(state);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gpmtm::detail
