#include <gtest/gtest.h>

#include <random>

#include "gpmtm/corpus.hpp"
#include "gpmtm/error.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

namespace gpmtm {
namespace {

using testing::make_corpus;
using testing::TempDir;

Corpus preprocess_lines(const std::vector<std::string>& lines) {
  RawDocuments raw;
  raw.texts = lines;
  for (std::size_t i = 0; i < lines.size(); ++i) raw.line_numbers.push_back(i + 1);
  return preprocess(raw, PreprocessOptions::defaults());
}

TEST(Tokenize, LowercasesAndDropsStopwordsAndPunctuation) {
  const auto corpus = preprocess_lines({"The cat, the CAT!"});
  ASSERT_EQ(corpus.num_docs(), 1u);
  EXPECT_EQ(corpus.vocab_size(), 1u);
  EXPECT_EQ(corpus.vocab().term(0), "cat");
  EXPECT_EQ(corpus.doc(0).count_of(0), 2);
  EXPECT_EQ(corpus.doc(0).length, 2);
}

TEST(Tokenize, DigitsAndSymbolsSplitTokens) {
  const auto tokens = tokenize("f16 jet-engine x", PreprocessOptions::defaults());
  EXPECT_EQ(tokens, (std::vector<std::string>{"jet", "engine"}));
}

TEST(Tokenize, NonAsciiBytesSeparateTokens) {
  const auto tokens = tokenize("caf\xc3\xa9 latte", PreprocessOptions::defaults());
  EXPECT_EQ(tokens, (std::vector<std::string>{"caf", "latte"}));
}

TEST(Preprocess, EmptyDocumentIsDroppedAndRecorded) {
  const auto corpus = preprocess_lines({"apple pie", "123 !!", "banana split"});
  EXPECT_EQ(corpus.num_docs(), 2u);
  EXPECT_EQ(dropped_documents(corpus, 3), (std::vector<std::size_t>{1}));
  EXPECT_EQ(corpus.doc(1).source_line, 2u);
}

TEST(Preprocess, AllEmptyIsAnError) {
  EXPECT_THROW(preprocess_lines({"the a", "!!"}), Error);
}

TEST(Preprocess, VocabularyIdsFollowFirstAppearance) {
  const auto corpus = preprocess_lines({"zebra apple", "apple mango"});
  EXPECT_EQ(corpus.vocab().terms(), (std::vector<std::string>{"zebra", "apple", "mango"}));
}

TEST(LoadCorpus, ThreeLinesGiveThreeDocuments) {
  TempDir dir;
  const auto path = dir.write("docs.txt", "apple pie\nbanana split\ncherry tart\n");
  const auto raw = load_corpus(path);
  EXPECT_EQ(raw.texts.size(), 3u);
  EXPECT_EQ(preprocess(raw, PreprocessOptions::defaults()).num_docs(), 3u);
}

TEST(LoadCorpus, EmptyFileIsAnError) {
  TempDir dir;
  const auto path = dir.write("empty.txt", "");
  try {
    load_corpus(path);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no documents"), std::string::npos);
  }
}

TEST(LoadCorpus, LabelCountMismatchIsAnError) {
  TempDir dir;
  const auto docs = dir.write("docs.txt", "apple pie\nbanana split\n");
  const auto labels = dir.write("labels.txt", "food\n");
  EXPECT_THROW(load_corpus(docs, labels), Error);
}

TEST(LoadCorpus, LabelsAttachToDocuments) {
  TempDir dir;
  const auto docs = dir.write("docs.txt", "apple pie\n!!\nengine car\n");
  const auto labels = dir.write("labels.txt", "food\nnone\ncars\n");
  const auto corpus = preprocess(load_corpus(docs, labels), PreprocessOptions::defaults());
  ASSERT_TRUE(corpus.has_labels());
  EXPECT_EQ(*corpus.doc(1).label, "cars");
  EXPECT_EQ(corpus_stats(corpus).num_classes, 2u);
}

TEST(LoadCorpus, InvalidUtf8IsAnError) {
  TempDir dir;
  const auto path = dir.write("bad.txt", "apple\n\xff\xfe pie\n");
  EXPECT_THROW(load_corpus(path), Error);
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain"));
  EXPECT_TRUE(is_valid_utf8("caf\xc3\xa9"));
  EXPECT_TRUE(is_valid_utf8("\xe2\x82\xac"));
  EXPECT_FALSE(is_valid_utf8("\xc3"));
  EXPECT_FALSE(is_valid_utf8("\xe2\x82"));
  EXPECT_FALSE(is_valid_utf8("\x80"));
}

TEST(Corpus, RejectsMalformedDocuments) {
  EXPECT_THROW(Corpus({}, testing::make_vocab(1)), Error);
  Document bad;
  bad.entries = {{1, 1}, {0, 1}};
  bad.length = 2;
  EXPECT_THROW(Corpus({bad}, testing::make_vocab(2)), Error);
  Document out_of_range = Document::from_entries({{5, 1}});
  EXPECT_THROW(Corpus({out_of_range}, testing::make_vocab(2)), Error);
}

TEST(Normalize, ScalesToTargetLength) {
  const auto raw = make_corpus({{3, 1, 0}, {5, 0, 0}, {1, 1, 1}}, false);
  const auto norm = normalize_lengths(raw, 20);
  EXPECT_TRUE(norm.normalized());
  EXPECT_EQ(norm.doc(0).entries, (std::vector<WordCount>{{0, 15}, {1, 5}}));
  EXPECT_EQ(norm.doc(1).entries, (std::vector<WordCount>{{0, 20}}));
  EXPECT_EQ(norm.doc(2).entries, (std::vector<WordCount>{{0, 7}, {1, 7}, {2, 7}}));
  EXPECT_EQ(norm.doc(2).length, 21);
  EXPECT_EQ(norm.doc(2).original_length, 3);
}

TEST(Normalize, RoundingToZeroKeepsDocumentNonEmpty) {
  // Each word contributes round(1 * 1 / 3) = 0; the first most frequent word survives.
  const auto raw = make_corpus({{1, 1, 1}}, false);
  const auto norm = normalize_lengths(raw, 1);
  EXPECT_EQ(norm.doc(0).entries, (std::vector<WordCount>{{0, 1}}));
}

TEST(Normalize, HalvesRoundAwayFromZero) {
  // 20 * 1 / 8 = 2.5 -> 3, 20 * 7 / 8 = 17.5 -> 18
  const auto norm = normalize_lengths(make_corpus({{1, 7}}, false), 20);
  EXPECT_EQ(norm.doc(0).entries, (std::vector<WordCount>{{0, 3}, {1, 18}}));
}

TEST(Normalize, RejectsDoubleNormalizationAndBadLength) {
  const auto raw = make_corpus({{1, 1}}, false);
  EXPECT_THROW(normalize_lengths(raw, 0), Error);
  EXPECT_THROW(normalize_lengths(normalize_lengths(raw, 20), 20), Error);
}

TEST(NormalizeProperty, LengthWithinRoundingBoundAndDeterministic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> V_dist(1, 12), cnt(0, 9), N_dist(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const int V = V_dist(rng);
    std::vector<std::vector<int>> dense(5, std::vector<int>(V));
    for (auto& row : dense) {
      int total = 0;
      for (auto& x : row) total += (x = cnt(rng));
      if (total == 0) row[0] = 1;
    }
    const auto raw = make_corpus(dense, false);
    const int N = N_dist(rng);
    const auto a = normalize_lengths(raw, N);
    const auto b = normalize_lengths(raw, N);
    EXPECT_EQ(a.checksum(), b.checksum());
    for (std::size_t m = 0; m < raw.num_docs(); ++m) {
      const auto& d = a.doc(m);
      const auto distinct = static_cast<double>(raw.doc(m).entries.size());
      EXPECT_GE(d.length, 1);
      EXPECT_LE(std::abs(d.length - N), distinct / 2.0 + 1.0);
      for (const auto& e : d.entries) EXPECT_GE(e.count, 1);
    }
  }
}

TEST(Stats, SingleDocument) {
  const auto s = corpus_stats(preprocess_lines({"apple apple"}));
  EXPECT_EQ(s.num_docs, 1u);
  EXPECT_EQ(s.vocab_size, 1u);
  EXPECT_DOUBLE_EQ(s.avg_len, 2.0);
  EXPECT_DOUBLE_EQ(s.sd_len, 0.0);
  EXPECT_EQ(s.min_len, 2);
  EXPECT_EQ(s.max_len, 2);
  EXPECT_FALSE(s.num_classes.has_value());
}

TEST(Stats, UsesOriginalLengthsAfterNormalization) {
  const auto raw = make_corpus({{1, 1}, {2, 2}}, false);
  const auto s = corpus_stats(normalize_lengths(raw, 20));
  EXPECT_DOUBLE_EQ(s.avg_len, 3.0);
  EXPECT_DOUBLE_EQ(s.sd_len, 1.0);
}

TEST(Stopwords, FileOverridesDefaults) {
  TempDir dir;
  const auto path = dir.write("stop.txt", "apple\n# comment\n\nPIE\n");
  PreprocessOptions options;
  options.stopwords = load_stopword_file(path);
  EXPECT_EQ(tokenize("apple pie the", options), (std::vector<std::string>{"the"}));
}

}  // namespace
}  // namespace gpmtm
