#include "gpmtm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpmtm/error.hpp"

namespace gpmtm {

std::vector<RankedWord> top_words(std::span<const double> rates, std::size_t n) {
  GPMTM_CHECK(n >= 2 && n <= rates.size(), "top-word count must lie in [2, V]");
  std::vector<WordId> ids(rates.size());
  std::iota(ids.begin(), ids.end(), WordId{0});
  auto by_rate = [&](WordId a, WordId b) {
    return rates[a] > rates[b] || (rates[a] == rates[b] && a < b);
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(), by_rate);
  std::vector<RankedWord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({ids[i], rates[ids[i]]});
  return out;
}

InvertedIndex::InvertedIndex(const Corpus& corpus)
    : postings_(corpus.vocab_size()), num_docs_(corpus.num_docs()) {
  for (std::size_t m = 0; m < corpus.num_docs(); ++m) {
    for (const auto& e : corpus.doc(m).entries) {
      postings_[e.word].push_back(static_cast<std::uint32_t>(m));
    }
  }
}

namespace {

std::int64_t intersection_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::int64_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::int64_t DocFrequencyIndex::single(WordId w) const {
  auto it = singles.find(w);
  if (it == singles.end()) throw Error("word not in frequency index: " + std::to_string(w));
  return it->second;
}

std::int64_t DocFrequencyIndex::pair(WordId a, WordId b) const {
  if (a == b) return single(a);
  auto it = pairs.find({std::min(a, b), std::max(a, b)});
  if (it == pairs.end()) throw Error("word pair not in frequency index");
  return it->second;
}

DocFrequencyIndex build_doc_frequency_index(const InvertedIndex& index,
                                            std::span<const WordId> words) {
  DocFrequencyIndex dfi;
  for (WordId w : words) {
    GPMTM_CHECK(w < index.vocab_size(), "unknown word id " + std::to_string(w));
    dfi.singles[w] = static_cast<std::int64_t>(index.postings(w).size());
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const WordId a = std::min(words[i], words[j]);
      const WordId b = std::max(words[i], words[j]);
      if (a == b || dfi.pairs.contains({a, b})) continue;
      dfi.pairs[{a, b}] = intersection_size(index.postings(a), index.postings(b));
    }
  }
  return dfi;
}

DocFrequencyIndex build_doc_frequency_index(const Corpus& corpus, std::span<const WordId> words) {
  return build_doc_frequency_index(InvertedIndex(corpus), words);
}

double umass_coherence(std::span<const WordId> words, const DocFrequencyIndex& index,
                       double epsilon) {
  GPMTM_CHECK(words.size() >= 2, "coherence needs at least two words");
  double score = 0.0;
  for (std::size_t i = 1; i < words.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto dj = index.single(words[j]);
      if (dj < 1) throw Error("word with zero document frequency: " + std::to_string(words[j]));
      score += std::log((static_cast<double>(index.pair(words[i], words[j])) + epsilon) /
                        static_cast<double>(dj));
    }
  }
  return score;
}

std::vector<TopicSummary> summarize_topics(const TopicMatrix& rates,
                                           std::span<const std::int32_t> doc_counts,
                                           const InvertedIndex& index, std::size_t n) {
  GPMTM_CHECK(rates.rows == doc_counts.size(), "rate matrix and topic counts disagree");
  GPMTM_CHECK(rates.cols == index.vocab_size(), "rate matrix and vocabulary disagree");
  n = std::min(n, rates.cols);
  std::vector<TopicSummary> out;
  for (std::size_t k = 0; k < rates.rows; ++k) {
    if (doc_counts[k] <= 0) continue;
    TopicSummary s;
    s.topic_id = k;
    s.doc_count = doc_counts[k];
    s.top_words = top_words(rates.row(k), n);
    std::vector<WordId> ids;
    ids.reserve(n);
    for (const auto& rw : s.top_words) ids.push_back(rw.word);
    s.coherence = umass_coherence(ids, build_doc_frequency_index(index, ids));
    out.push_back(std::move(s));
  }
  return out;
}

double average_coherence(const TopicMatrix& rates, std::span<const std::int32_t> doc_counts,
                         const InvertedIndex& index, std::size_t n) {
  const auto topics = summarize_topics(rates, doc_counts, index, n);
  GPMTM_CHECK(!topics.empty(), "no nonempty topics");
  double sum = 0.0;
  for (const auto& t : topics) sum += t.coherence;
  return sum / static_cast<double>(topics.size());
}

double average_coherence(const FitResult& fit, const Corpus& corpus, std::size_t n) {
  GPMTM_CHECK(!corpus.normalized(), "coherence is computed on the pre-normalization corpus");
  return average_coherence(fit.rates, fit.topic_doc_counts, InvertedIndex(corpus), n);
}

// ---------------------------------------------------------------------------
// Word-frequency diagnostics

namespace {

std::vector<std::int32_t> word_column(const Corpus& corpus, WordId word) {
  GPMTM_CHECK(word < corpus.vocab_size(), "unknown word id " + std::to_string(word));
  std::vector<std::int32_t> col(corpus.num_docs(), 0);
  for (std::size_t m = 0; m < corpus.num_docs(); ++m) col[m] = corpus.doc(m).count_of(word);
  return col;
}

double poisson_pmf(double rate, std::int64_t f) {
  if (rate == 0.0) return f == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(f) * std::log(rate) - rate -
                  std::lgamma(static_cast<double>(f) + 1.0));
}

}  // namespace

PoissonFit poisson_fit_diagnostic(const Corpus& corpus, WordId word) {
  const auto col = word_column(corpus, word);
  const double M = static_cast<double>(corpus.num_docs());
  const std::int32_t max_f = *std::max_element(col.begin(), col.end());

  PoissonFit fit;
  fit.rate = std::accumulate(col.begin(), col.end(), 0.0) / M;
  std::vector<std::int64_t> observed(static_cast<std::size_t>(max_f) + 1, 0);
  for (auto c : col) ++observed[c];
  for (std::int32_t f = 0; f <= max_f; ++f) {
    fit.rows.push_back({f, observed[f], M * poisson_pmf(fit.rate, f)});
  }
  // rate <= max_f, so terms beyond max_f shrink geometrically.
  double tail = 0.0;
  for (std::int64_t f = max_f + 1;; ++f) {
    const double p = poisson_pmf(fit.rate, f);
    tail += p;
    if (p <= tail * 1e-17 || p == 0.0) break;
  }
  fit.predicted_tail = M * tail;
  return fit;
}

std::vector<Dispersion> dispersion_diagnostic(const Corpus& corpus, std::span<const WordId> words) {
  std::vector<Dispersion> out;
  const double M = static_cast<double>(corpus.num_docs());
  for (WordId w : words) {
    const auto col = word_column(corpus, w);
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / M;
    double ss = 0.0;
    for (auto c : col) ss += (c - mean) * (c - mean);
    const double var = ss / M;
    out.push_back({w, mean, var,
                   mean > 0.0 ? var / mean : std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

}  // namespace gpmtm
