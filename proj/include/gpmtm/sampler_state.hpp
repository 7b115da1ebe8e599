#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/math.hpp"

namespace gpmtm {

using TopicId = std::int32_t;
inline constexpr TopicId kUnassigned = -1;

// Sufficient statistics of a one-topic-per-document mixture:
//   m_k  documents in topic k
//   n_k  words in topic k
//   n_kv occurrences of word v in topic k
// n_kv is stored word-major (V rows of K topics) so the per-document kernels
// read one contiguous row per word.
class SamplerState {
 public:
  SamplerState(std::size_t num_topics, std::size_t vocab_size, std::size_t num_docs,
               std::uint64_t seed);

  std::size_t num_topics() const { return num_topics_; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t num_docs() const { return z_.size(); }

  std::span<const TopicId> assignments() const { return z_; }
  TopicId topic_of(std::size_t m) const { return z_.at(m); }

  std::span<const std::int32_t> doc_counts() const { return m_; }
  std::span<const std::int64_t> word_counts() const { return n_; }
  std::int32_t doc_count(std::size_t k) const { return m_[k]; }
  std::int64_t word_count(std::size_t k) const { return n_[k]; }
  std::int32_t word_topic_count(std::size_t k, WordId v) const {
    return nvk_[static_cast<std::size_t>(v) * num_topics_ + k];
  }
  // n_{.v} over all topics, contiguous.
  std::span<const std::int32_t> word_row(WordId v) const {
    return {nvk_.data() + static_cast<std::size_t>(v) * num_topics_, num_topics_};
  }

  // Σ_k m_k; equals M except while one document is excluded.
  std::size_t assigned_docs() const { return assigned_; }
  std::size_t nonempty_topics() const { return nonempty_; }

  void add_document(std::size_t m, const Document& doc, TopicId k);
  // Decrements the counts of m's current topic and marks m unassigned.
  TopicId remove_document(std::size_t m, const Document& doc);

  Rng& rng() { return rng_; }

 private:
  std::size_t num_topics_;
  std::size_t vocab_size_;
  std::vector<TopicId> z_;
  std::vector<std::int32_t> m_;
  std::vector<std::int64_t> n_;
  std::vector<std::int32_t> nvk_;
  std::size_t assigned_ = 0;
  std::size_t nonempty_ = 0;
  Rng rng_;
};

// Draws every z_m uniformly from [0, K) in corpus order and tallies counts.
SamplerState init_uniform_state(const Corpus& corpus, std::size_t num_topics, std::uint64_t seed);

// Builds a state from explicit assignments (all documents assigned).
SamplerState state_from_assignments(const Corpus& corpus, std::size_t num_topics,
                                    std::span<const TopicId> z, std::uint64_t seed = 0);

// Recomputes (m, n, n_kv) from z and the corpus and compares exactly.
bool counts_consistent(const SamplerState& state, const Corpus& corpus);

// Row-major K×V matrix of per-topic word rates or probabilities.
struct TopicMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  TopicMatrix() = default;
  TopicMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& operator()(std::size_t k, std::size_t v) { return values[k * cols + v]; }
  double operator()(std::size_t k, std::size_t v) const { return values[k * cols + v]; }
  std::span<const double> row(std::size_t k) const { return {values.data() + k * cols, cols}; }
};

}  // namespace gpmtm
