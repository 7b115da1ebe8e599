#include "gpmtm/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpmtm/error.hpp"

namespace gpmtm {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format number");
  return {buf, ptr};
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "iteration,nonempty_topics,avg_coherence\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << r.nonempty_topics << ',';
    if (r.avg_coherence) out << format_double(*r.avg_coherence);
    out << '\n';
  }
  return out.str();
}

std::string topics_tsv(const std::vector<TopicSummary>& topics, const Vocabulary& vocab) {
  std::ostringstream out;
  out << "topic_id\tdoc_count\tcoherence\ttop_words\n";
  for (const auto& t : topics) {
    out << t.topic_id << '\t' << t.doc_count << '\t' << format_double(t.coherence) << '\t';
    for (std::size_t i = 0; i < t.top_words.size(); ++i) {
      if (i) out << ' ';
      out << vocab.term(t.top_words[i].word) << ':' << format_double(t.top_words[i].value);
    }
    out << '\n';
  }
  return out.str();
}

std::string fit_manifest_json(const FitResult& fit, bool include_timing) {
  nlohmann::ordered_json j;
  j["model"] = fit.model;
  j["seed"] = fit.seed;
  auto& h = j["hyperparams"];
  h = nlohmann::ordered_json::object();
  for (const auto& [name, value] : fit.hyperparams) h[name] = value;
  j["num_topics"] = fit.topic_doc_counts.size();
  j["nonempty_topics"] = fit.nonempty_topics;
  j["iterations"] = fit.trace.size();
  if (include_timing) j["wall_time_s"] = fit.wall_time_seconds;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed: " + path.string());
}

void write_fit_result(const FitResult& fit, const Corpus& raw_corpus, std::size_t top_n,
                      const std::filesystem::path& dir, const std::string& stem,
                      bool include_timing) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
  const InvertedIndex index(raw_corpus);
  const auto topics = summarize_topics(fit.rates, fit.topic_doc_counts, index, top_n);
  write_text_file(dir / (stem + ".json"), fit_manifest_json(fit, include_timing));
  write_text_file(dir / (stem + "_trace.csv"), trace_csv(fit.trace));
  write_text_file(dir / (stem + "_topics.tsv"), topics_tsv(topics, raw_corpus.vocab()));
}

}  // namespace gpmtm
