#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gpmtm/error.hpp"

namespace gpmtm {

using WordId = std::uint32_t;

// Bijection between terms and dense ids in [0, V). Ids are handed out in
// first-appearance order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> terms);

  WordId add(std::string_view term);
  std::optional<WordId> find(std::string_view term) const;
  WordId id_of(std::string_view term) const;  // throws on unknown term
  const std::string& term(WordId id) const { return terms_.at(id); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, WordId> index_;
};

struct WordCount {
  WordId word;
  std::int32_t count;

  bool operator==(const WordCount&) const = default;
};

// Sparse bag of words. Entries are sorted by word id and all counts are >= 1.
struct Document {
  std::vector<WordCount> entries;
  std::int32_t length = 0;           // sum of entry counts
  std::int32_t original_length = 0;  // length before normalization
  std::size_t source_line = 0;       // index of the raw document it came from
  std::optional<std::string> label;

  static Document from_entries(std::vector<WordCount> entries);
  std::int32_t count_of(WordId w) const;
};

class Corpus {
 public:
  Corpus(std::vector<Document> docs, Vocabulary vocab, bool normalized = false);

  std::span<const Document> docs() const { return docs_; }
  const Document& doc(std::size_t m) const { return docs_.at(m); }
  const Vocabulary& vocab() const { return vocab_; }
  std::size_t num_docs() const { return docs_.size(); }
  std::size_t vocab_size() const { return vocab_.size(); }
  bool normalized() const { return normalized_; }
  bool has_labels() const;

  // FNV-1a over vocabulary and counts; used to prove two runs saw identical
  // preprocessing output.
  std::uint64_t checksum() const;

 private:
  std::vector<Document> docs_;
  Vocabulary vocab_;
  bool normalized_ = false;
};

struct RawDocuments {
  std::vector<std::string> texts;
  std::optional<std::vector<std::string>> labels;
  std::vector<std::size_t> line_numbers;  // 1-based line of each text
};

// One document per nonblank line. Labels, if given, align with the nonblank
// document lines one for one.
RawDocuments load_corpus(const std::filesystem::path& path,
                         const std::optional<std::filesystem::path>& label_path = std::nullopt);

bool is_valid_utf8(std::string_view bytes);

struct PreprocessOptions {
  std::unordered_set<std::string> stopwords;
  std::size_t min_token_length = 2;

  static PreprocessOptions defaults();
};

const std::vector<std::string_view>& default_stopwords();
inline constexpr std::string_view kStopwordListVersion = "nltk-english-v1";
std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path);

std::vector<std::string> tokenize(std::string_view text, const PreprocessOptions& options);

// Documents left empty by preprocessing are dropped; Document::source_line
// records which raw document each survivor came from.
Corpus preprocess(const RawDocuments& raw, const PreprocessOptions& options);

std::vector<std::size_t> dropped_documents(const Corpus& corpus, std::size_t num_raw);

// x_mv <- round(N x_mv / N_m), half away from zero. Zero entries are removed;
// a document that would become empty keeps its most frequent original word
// (lowest id on ties) with count 1.
Corpus normalize_lengths(const Corpus& corpus, int target_length);

struct CorpusStats {
  std::size_t num_docs = 0;
  std::size_t vocab_size = 0;
  std::optional<std::size_t> num_classes;
  double avg_len = 0.0;
  double sd_len = 0.0;
  std::int32_t min_len = 0;
  std::int32_t max_len = 0;
};

// Length moments use pre-normalization lengths. sd is the population sd.
CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace gpmtm
