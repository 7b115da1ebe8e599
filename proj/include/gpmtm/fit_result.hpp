#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/sampler_state.hpp"

namespace gpmtm {

struct TraceRecord {
  int iteration = 0;  // 1-based sweep index
  std::size_t nonempty_topics = 0;
  std::optional<double> avg_coherence;
};

// Output of a GPM or GSDMM fit. `rates` holds λ̂ (GPM) or φ̂ (GSDMM), one row
// per topic including empty ones.
struct FitResult {
  std::string model;
  std::vector<TopicId> assignments;
  TopicMatrix rates;
  std::vector<std::int32_t> topic_doc_counts;
  std::size_t nonempty_topics = 0;
  std::vector<TraceRecord> trace;
  std::vector<std::pair<std::string, double>> hyperparams;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
};

struct FitOptions {
  // Optional per-iteration coherence for the trace.
  std::function<double(const SamplerState&)> iteration_scorer;
  // Called after init (iteration 0) and after every sweep.
  std::function<void(int iteration, const SamplerState&)> on_sweep;
};

std::size_t count_nonempty(std::span<const std::int32_t> doc_counts);

}  // namespace gpmtm
