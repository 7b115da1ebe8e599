#include "gpmtm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gpmtm/hash.hpp"

namespace gpmtm {

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> terms) {
  for (auto& t : terms) {
    GPMTM_CHECK(!t.empty(), "vocabulary term must be nonempty");
    GPMTM_CHECK(!index_.contains(t), "duplicate vocabulary term: " + t);
    index_.emplace(t, static_cast<WordId>(terms_.size()));
    terms_.push_back(std::move(t));
  }
}

WordId Vocabulary::add(std::string_view term) {
  GPMTM_CHECK(!term.empty(), "vocabulary term must be nonempty");
  std::string key(term);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<WordId>(terms_.size());
  index_.emplace(key, id);
  terms_.push_back(std::move(key));
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId Vocabulary::id_of(std::string_view term) const {
  auto id = find(term);
  if (!id) throw Error("unknown word: " + std::string(term));
  return *id;
}

// ---------------------------------------------------------------------------
// Document / Corpus

Document Document::from_entries(std::vector<WordCount> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const WordCount& a, const WordCount& b) { return a.word < b.word; });
  Document d;
  for (const auto& e : entries) {
    GPMTM_CHECK(e.count >= 1, "document counts must be positive");
    GPMTM_CHECK(d.entries.empty() || d.entries.back().word != e.word,
                "duplicate word in document");
    d.entries.push_back(e);
    d.length += e.count;
  }
  d.original_length = d.length;
  return d;
}

std::int32_t Document::count_of(WordId w) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), w,
                             [](const WordCount& e, WordId id) { return e.word < id; });
  return (it != entries.end() && it->word == w) ? it->count : 0;
}

Corpus::Corpus(std::vector<Document> docs, Vocabulary vocab, bool normalized)
    : docs_(std::move(docs)), vocab_(std::move(vocab)), normalized_(normalized) {
  GPMTM_CHECK(!docs_.empty(), "no documents");
  const auto V = vocab_.size();
  for (const auto& d : docs_) {
    GPMTM_CHECK(!d.entries.empty(), "document has no words");
    std::int32_t sum = 0;
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
      const auto& e = d.entries[i];
      GPMTM_CHECK(e.word < V, "word id out of vocabulary range");
      GPMTM_CHECK(e.count >= 1, "document counts must be positive");
      GPMTM_CHECK(i == 0 || d.entries[i - 1].word < e.word, "document entries must be sorted");
      sum += e.count;
    }
    GPMTM_CHECK(sum == d.length, "document length does not match its counts");
  }
}

bool Corpus::has_labels() const {
  return std::all_of(docs_.begin(), docs_.end(),
                     [](const Document& d) { return d.label.has_value(); });
}

std::uint64_t Corpus::checksum() const {
  Fnv1a h;
  h.update_u64(vocab_.size());
  for (const auto& t : vocab_.terms()) {
    h.update(t);
    h.update(std::string_view("\0", 1));
  }
  h.update_u64(docs_.size());
  for (const auto& d : docs_) {
    h.update_u64(d.entries.size());
    for (const auto& e : d.entries) {
      h.update_u64(e.word);
      h.update_u64(static_cast<std::uint64_t>(e.count));
    }
  }
  return h.digest();
}

// ---------------------------------------------------------------------------
// Loading

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::vector<std::pair<std::size_t, std::string>> read_nonblank_lines(
    const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + std::string(what) + " file: " + path.string());
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(std::move(line));
    if (!is_valid_utf8(line)) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    if (is_blank(line)) continue;
    lines.emplace_back(lineno, std::move(line));
  }
  return lines;
}

}  // namespace

RawDocuments load_corpus(const std::filesystem::path& path,
                         const std::optional<std::filesystem::path>& label_path) {
  auto lines = read_nonblank_lines(path, "corpus");
  if (lines.empty()) throw Error("no documents in " + path.string());

  RawDocuments raw;
  raw.texts.reserve(lines.size());
  for (auto& [no, text] : lines) {
    raw.line_numbers.push_back(no);
    raw.texts.push_back(std::move(text));
  }
  if (label_path) {
    auto label_lines = read_nonblank_lines(*label_path, "label");
    if (label_lines.size() != raw.texts.size()) {
      throw Error("label/document count mismatch: " + std::to_string(label_lines.size()) +
                  " labels for " + std::to_string(raw.texts.size()) + " documents");
    }
    std::vector<std::string> labels;
    labels.reserve(label_lines.size());
    for (auto& [no, text] : label_lines) {
      auto first = text.find_first_not_of(" \t");
      auto last = text.find_last_not_of(" \t");
      labels.push_back(text.substr(first, last - first + 1));
    }
    raw.labels = std::move(labels);
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Preprocessing

std::vector<std::string> tokenize(std::string_view text, const PreprocessOptions& options) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= options.min_token_length && !options.stopwords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isalpha(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Corpus preprocess(const RawDocuments& raw, const PreprocessOptions& options) {
  GPMTM_CHECK(!raw.texts.empty(), "no documents");
  GPMTM_CHECK(!raw.labels || raw.labels->size() == raw.texts.size(),
              "label/document count mismatch");

  Vocabulary vocab;
  std::vector<Document> docs;
  docs.reserve(raw.texts.size());
  for (std::size_t i = 0; i < raw.texts.size(); ++i) {
    const auto tokens = tokenize(raw.texts[i], options);
    if (tokens.empty()) continue;
    std::map<WordId, std::int32_t> counts;
    for (const auto& t : tokens) ++counts[vocab.add(t)];
    std::vector<WordCount> entries;
    entries.reserve(counts.size());
    for (auto [w, c] : counts) entries.push_back({w, c});
    auto doc = Document::from_entries(std::move(entries));
    doc.source_line = i;
    if (raw.labels) doc.label = (*raw.labels)[i];
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw Error("all documents are empty after preprocessing");
  return Corpus(std::move(docs), std::move(vocab));
}

std::vector<std::size_t> dropped_documents(const Corpus& corpus, std::size_t num_raw) {
  std::vector<bool> kept(num_raw, false);
  for (const auto& d : corpus.docs()) {
    if (d.source_line < num_raw) kept[d.source_line] = true;
  }
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < num_raw; ++i) {
    if (!kept[i]) dropped.push_back(i);
  }
  return dropped;
}

// ---------------------------------------------------------------------------
// Length normalization

Corpus normalize_lengths(const Corpus& corpus, int target_length) {
  GPMTM_CHECK(!corpus.normalized(), "corpus is already length-normalized");
  GPMTM_CHECK(target_length >= 1, "normalization length must be >= 1");
  const std::int64_t N = target_length;

  std::vector<Document> docs;
  docs.reserve(corpus.num_docs());
  for (const auto& d : corpus.docs()) {
    Document out;
    out.source_line = d.source_line;
    out.label = d.label;
    out.original_length = d.original_length;
    const std::int64_t len = d.length;
    for (const auto& e : d.entries) {
      // round(N x / len) for positive operands, halves rounded up.
      const std::int64_t scaled = (2 * N * e.count + len) / (2 * len);
      if (scaled > 0) {
        out.entries.push_back({e.word, static_cast<std::int32_t>(scaled)});
        out.length += static_cast<std::int32_t>(scaled);
      }
    }
    if (out.entries.empty()) {
      // Entries are sorted by id, so the first maximum is the lowest id.
      auto best = std::max_element(
          d.entries.begin(), d.entries.end(),
          [](const WordCount& a, const WordCount& b) { return a.count < b.count; });
      out.entries.push_back({best->word, 1});
      out.length = 1;
    }
    docs.push_back(std::move(out));
  }
  return Corpus(std::move(docs), corpus.vocab(), /*normalized=*/true);
}

// ---------------------------------------------------------------------------
// Statistics

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.num_docs = corpus.num_docs();
  s.vocab_size = corpus.vocab_size();
  if (corpus.has_labels()) {
    std::set<std::string> classes;
    for (const auto& d : corpus.docs()) classes.insert(*d.label);
    s.num_classes = classes.size();
  }
  double sum = 0.0;
  s.min_len = corpus.doc(0).original_length;
  s.max_len = corpus.doc(0).original_length;
  for (const auto& d : corpus.docs()) {
    sum += d.original_length;
    s.min_len = std::min(s.min_len, d.original_length);
    s.max_len = std::max(s.max_len, d.original_length);
  }
  const double M = static_cast<double>(s.num_docs);
  s.avg_len = sum / M;
  double ss = 0.0;
  for (const auto& d : corpus.docs()) {
    const double dev = d.original_length - s.avg_len;
    ss += dev * dev;
  }
  s.sd_len = std::sqrt(ss / M);
  return s;
}

}  // namespace gpmtm
