#include "gpmtm/sampler_state.hpp"

#include <random>

#include "gpmtm/error.hpp"

namespace gpmtm {

SamplerState::SamplerState(std::size_t num_topics, std::size_t vocab_size, std::size_t num_docs,
                           std::uint64_t seed)
    : num_topics_(num_topics),
      vocab_size_(vocab_size),
      z_(num_docs, kUnassigned),
      m_(num_topics, 0),
      n_(num_topics, 0),
      nvk_(num_topics * vocab_size, 0),
      rng_(seed) {
  GPMTM_CHECK(num_topics >= 1, "number of topics must be >= 1");
}

void SamplerState::add_document(std::size_t m, const Document& doc, TopicId k) {
  GPMTM_CHECK(k >= 0 && static_cast<std::size_t>(k) < num_topics_, "topic out of range");
  GPMTM_CHECK(z_.at(m) == kUnassigned, "document is already assigned");
  z_[m] = k;
  if (m_[k]++ == 0) ++nonempty_;
  n_[k] += doc.length;
  for (const auto& e : doc.entries) {
    nvk_[static_cast<std::size_t>(e.word) * num_topics_ + k] += e.count;
  }
  ++assigned_;
}

TopicId SamplerState::remove_document(std::size_t m, const Document& doc) {
  const TopicId k = z_.at(m);
  GPMTM_CHECK(k != kUnassigned, "document is not assigned");
  if (m_[k] < 1 || n_[k] < doc.length) throw Error("topic counts would go negative");
  for (const auto& e : doc.entries) {
    auto& c = nvk_[static_cast<std::size_t>(e.word) * num_topics_ + k];
    if (c < e.count) throw Error("word-topic count would go negative");
    c -= e.count;
  }
  if (--m_[k] == 0) --nonempty_;
  n_[k] -= doc.length;
  z_[m] = kUnassigned;
  --assigned_;
  return k;
}

SamplerState init_uniform_state(const Corpus& corpus, std::size_t num_topics,
                                std::uint64_t seed) {
  SamplerState state(num_topics, corpus.vocab_size(), corpus.num_docs(), seed);
  std::uniform_int_distribution<TopicId> pick(0, static_cast<TopicId>(num_topics) - 1);
  for (std::size_t m = 0; m < corpus.num_docs(); ++m) {
    state.add_document(m, corpus.doc(m), pick(state.rng()));
  }
  return state;
}

SamplerState state_from_assignments(const Corpus& corpus, std::size_t num_topics,
                                    std::span<const TopicId> z, std::uint64_t seed) {
  GPMTM_CHECK(z.size() == corpus.num_docs(), "assignment vector has wrong length");
  SamplerState state(num_topics, corpus.vocab_size(), corpus.num_docs(), seed);
  for (std::size_t m = 0; m < z.size(); ++m) state.add_document(m, corpus.doc(m), z[m]);
  return state;
}

bool counts_consistent(const SamplerState& state, const Corpus& corpus) {
  if (state.num_docs() != corpus.num_docs() || state.vocab_size() != corpus.vocab_size()) {
    return false;
  }
  const auto K = state.num_topics();
  std::vector<std::int64_t> m(K, 0), n(K, 0);
  std::vector<std::int64_t> nvk(K * corpus.vocab_size(), 0);
  std::size_t assigned = 0;
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    const TopicId k = state.topic_of(d);
    if (k == kUnassigned) continue;
    if (k < 0 || static_cast<std::size_t>(k) >= K) return false;
    ++assigned;
    ++m[k];
    n[k] += corpus.doc(d).length;
    for (const auto& e : corpus.doc(d).entries) nvk[e.word * K + k] += e.count;
  }
  if (assigned != state.assigned_docs()) return false;
  std::size_t nonempty = 0;
  for (std::size_t k = 0; k < K; ++k) {
    if (m[k] != state.doc_count(k) || n[k] != state.word_count(k)) return false;
    std::int64_t row_sum = 0;
    for (WordId v = 0; v < corpus.vocab_size(); ++v) {
      if (nvk[v * K + k] != state.word_topic_count(k, v)) return false;
      row_sum += state.word_topic_count(k, v);
    }
    if (row_sum != state.word_count(k)) return false;
    if (m[k] > 0) ++nonempty;
  }
  return nonempty == state.nonempty_topics();
}

}  // namespace gpmtm
