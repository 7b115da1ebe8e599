#include <cctype>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gpmtm/corpus.hpp"

namespace gpmtm {

// NLTK English stopword list. Contracted forms ("don't", "you've", ...) are
// omitted since the tokenizer splits on apostrophes.
const std::vector<std::string_view>& default_stopwords() {
  static const std::vector<std::string_view> words = {
      "i",       "me",       "my",      "myself",  "we",        "our",     "ours",
      "ourselves", "you",    "your",    "yours",   "yourself",  "yourselves",
      "he",      "him",      "his",     "himself", "she",       "her",     "hers",
      "herself", "it",       "its",     "itself",  "they",      "them",    "their",
      "theirs",  "themselves", "what",  "which",   "who",       "whom",    "this",
      "that",    "these",    "those",   "am",      "is",        "are",     "was",
      "were",    "be",       "been",    "being",   "have",      "has",     "had",
      "having",  "do",       "does",    "did",     "doing",     "a",       "an",
      "the",     "and",      "but",     "if",      "or",        "because", "as",
      "until",   "while",    "of",      "at",      "by",        "for",     "with",
      "about",   "against",  "between", "into",    "through",   "during",  "before",
      "after",   "above",    "below",   "to",      "from",      "up",      "down",
      "in",      "out",      "on",      "off",     "over",      "under",   "again",
      "further", "then",     "once",    "here",    "there",     "when",    "where",
      "why",     "how",      "all",     "any",     "both",      "each",    "few",
      "more",    "most",     "other",   "some",    "such",      "no",      "nor",
      "not",     "only",     "own",     "same",    "so",        "than",    "too",
      "very",    "s",        "t",       "can",     "will",      "just",    "don",
      "should",  "now",      "d",       "ll",      "m",         "o",       "re",
      "ve",      "y",        "ain",     "aren",    "couldn",    "didn",    "doesn",
      "hadn",    "hasn",     "haven",   "isn",     "ma",        "mightn",  "mustn",
      "needn",   "shan",     "shouldn", "wasn",    "weren",     "won",     "wouldn",
  };
  return words;
}

std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word;
    for (char c : line) {
      if (c == '\r' || c == ' ' || c == '\t') continue;
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (!word.empty() && word[0] != '#') words.insert(word);
  }
  return words;
}

PreprocessOptions PreprocessOptions::defaults() {
  PreprocessOptions options;
  for (auto w : default_stopwords()) options.stopwords.emplace(w);
  return options;
}

}  // namespace gpmtm
