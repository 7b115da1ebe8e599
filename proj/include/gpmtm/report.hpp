#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/evaluation.hpp"
#include "gpmtm/fit_result.hpp"

// Plain-text serializations of fit output.
//
//   trace CSV    iteration,nonempty_topics,avg_coherence   (coherence blank if not traced)
//   topics TSV   topic_id  doc_count  coherence  word:value word:value ...
//   fit JSON     model, seed, hyperparams, nonempty_topics[, wall_time_s]
namespace gpmtm {

std::string format_double(double value);  // shortest round-trip form

std::string trace_csv(const std::vector<TraceRecord>& trace);
std::string topics_tsv(const std::vector<TopicSummary>& topics, const Vocabulary& vocab);
std::string fit_manifest_json(const FitResult& fit, bool include_timing);

// Writes <stem>.json, <stem>_trace.csv and <stem>_topics.tsv into dir.
// raw_corpus is the pre-normalization corpus used for coherence.
void write_fit_result(const FitResult& fit, const Corpus& raw_corpus, std::size_t top_n,
                      const std::filesystem::path& dir, const std::string& stem,
                      bool include_timing = true);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gpmtm
