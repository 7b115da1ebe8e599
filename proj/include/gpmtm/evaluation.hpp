#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/fit_result.hpp"

namespace gpmtm {

struct RankedWord {
  WordId word;
  double value;
};

struct TopicSummary {
  std::size_t topic_id = 0;
  std::int32_t doc_count = 0;
  std::vector<RankedWord> top_words;  // descending value, lowest id first on ties
  double coherence = 0.0;
};

// The n highest-valued words; requires 2 <= n <= V.
std::vector<RankedWord> top_words(std::span<const double> rates, std::size_t n);

// Documents containing each word, built once per (raw) corpus.
class InvertedIndex {
 public:
  explicit InvertedIndex(const Corpus& corpus);

  std::span<const std::uint32_t> postings(WordId w) const { return postings_.at(w); }
  std::size_t num_docs() const { return num_docs_; }
  std::size_t vocab_size() const { return postings_.size(); }

 private:
  std::vector<std::vector<std::uint32_t>> postings_;
  std::size_t num_docs_;
};

// D(v) and D(v_i, v_j) restricted to a word set.
class DocFrequencyIndex {
 public:
  std::int64_t single(WordId w) const;
  // Symmetric; D(v, v) = D(v).
  std::int64_t pair(WordId a, WordId b) const;

  std::map<WordId, std::int64_t> singles;
  std::map<std::pair<WordId, WordId>, std::int64_t> pairs;  // key (min, max)
};

DocFrequencyIndex build_doc_frequency_index(const InvertedIndex& index,
                                            std::span<const WordId> words);
DocFrequencyIndex build_doc_frequency_index(const Corpus& corpus, std::span<const WordId> words);

inline constexpr double kUmassEpsilon = 1.0;

// Σ_{i=2..n} Σ_{j<i} log[(D(w_i, w_j) + ε) / D(w_j)], words in rate-descending order.
double umass_coherence(std::span<const WordId> words, const DocFrequencyIndex& index,
                       double epsilon = kUmassEpsilon);

// Summaries for topics with m_k > 0, ordered by topic id. n is clamped to V.
std::vector<TopicSummary> summarize_topics(const TopicMatrix& rates,
                                           std::span<const std::int32_t> doc_counts,
                                           const InvertedIndex& index, std::size_t n);

// Unweighted mean coherence over nonempty topics. `corpus` is the
// pre-normalization corpus.
double average_coherence(const FitResult& fit, const Corpus& corpus, std::size_t n = 10);
double average_coherence(const TopicMatrix& rates, std::span<const std::int32_t> doc_counts,
                         const InvertedIndex& index, std::size_t n = 10);

struct PoissonFitRow {
  std::int32_t frequency;
  std::int64_t observed;
  double predicted;
};

struct PoissonFit {
  double rate = 0.0;  // MLE: Σ_m x_mv / M
  std::vector<PoissonFitRow> rows;  // f = 0..max observed frequency
  double predicted_tail = 0.0;      // M · P(X > max observed frequency)
};

PoissonFit poisson_fit_diagnostic(const Corpus& corpus, WordId word);

struct Dispersion {
  WordId word;
  double mean;
  double variance;  // population variance over all M documents
  double ratio;     // variance / mean; NaN when the mean is 0
};

std::vector<Dispersion> dispersion_diagnostic(const Corpus& corpus, std::span<const WordId> words);

}  // namespace gpmtm
