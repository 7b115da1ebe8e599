// gpmtm: fit GPM / GSDMM short-text topic models and run seeded experiments.
//
//   gpmtm run      --input docs.txt --model gpm,gsdmm --k-init 50,100,400 --runs 3 --out results/
//   gpmtm stats    --input docs.txt [--labels labels.txt]
//   gpmtm diagnose --input docs.txt --word jet --word car --out diag/

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpmtm/corpus.hpp"
#include "gpmtm/evaluation.hpp"
#include "gpmtm/experiment.hpp"
#include "gpmtm/report.hpp"

namespace {

struct CorpusArgs {
  std::string input;
  std::string labels;
  std::string stopwords;
  std::size_t min_token_length = 2;

  void add_to(CLI::App* app) {
    app->add_option("--input", input, "Corpus file, one document per line")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--labels", labels, "Label file aligned with the corpus lines")
        ->check(CLI::ExistingFile);
    app->add_option("--stopwords", stopwords, "Stopword file overriding the bundled list")
        ->check(CLI::ExistingFile);
    app->add_option("--min-token-length", min_token_length, "Drop shorter tokens")
        ->capture_default_str();
  }

  std::optional<std::filesystem::path> labels_path() const {
    if (labels.empty()) return std::nullopt;
    return labels;
  }

  gpmtm::Corpus load(std::size_t* num_raw = nullptr) const {
    auto raw = gpmtm::load_corpus(input, labels_path());
    auto options = gpmtm::PreprocessOptions::defaults();
    if (!stopwords.empty()) options.stopwords = gpmtm::load_stopword_file(stopwords);
    options.min_token_length = min_token_length;
    auto corpus = gpmtm::preprocess(raw, options);
    if (num_raw) *num_raw = raw.texts.size();
    return corpus;
  }
};

int run_command(const gpmtm::ExperimentConfig& config, const std::string& out) {
  const auto result = gpmtm::run_experiment(config);
  gpmtm::emit_reports(result, out);
  const auto dropped = result.num_raw_documents - result.corpus->num_docs();
  std::cerr << "corpus: " << result.corpus->num_docs() << " documents (" << dropped
            << " dropped as empty), V=" << result.corpus->vocab_size() << "\n";
  for (const auto& s : result.summary) {
    std::cerr << "cell " << s.cell.id << " " << gpmtm::model_name(s.cell.model)
              << " k_init=" << s.cell.k_init << " alpha=" << s.cell.alpha
              << " beta=" << s.cell.beta << ": topics " << s.topics_mean << " (" << s.topics_sd
              << "), coherence " << s.coherence_mean << " (" << s.coherence_sd << ")\n";
  }
  int failed = 0;
  for (const auto& r : result.records) {
    if (!r.ok) {
      ++failed;
      std::cerr << "cell " << r.cell << " run " << r.run << " failed: " << r.error << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}

int stats_command(const CorpusArgs& args) {
  std::size_t num_raw = 0;
  const auto corpus = args.load(&num_raw);
  const auto s = gpmtm::corpus_stats(corpus);
  std::cout << "documents\t" << s.num_docs << "\n"
            << "dropped\t" << (num_raw - s.num_docs) << "\n"
            << "vocabulary\t" << s.vocab_size << "\n";
  if (s.num_classes) std::cout << "classes\t" << *s.num_classes << "\n";
  std::cout << "avg_length\t" << s.avg_len << "\n"
            << "sd_length\t" << s.sd_len << "\n"
            << "min_length\t" << s.min_len << "\n"
            << "max_length\t" << s.max_len << "\n";
  return 0;
}

int diagnose_command(const CorpusArgs& args, const std::vector<std::string>& words,
                     const std::string& out) {
  const auto corpus = args.load();
  std::filesystem::create_directories(out);
  std::vector<gpmtm::WordId> ids;
  for (const auto& w : words) ids.push_back(corpus.vocab().id_of(w));

  std::ostringstream disp;
  disp << "word,mean,variance,variance_to_mean\n";
  for (const auto& d : gpmtm::dispersion_diagnostic(corpus, ids)) {
    disp << corpus.vocab().term(d.word) << ',' << gpmtm::format_double(d.mean) << ','
         << gpmtm::format_double(d.variance) << ',' << gpmtm::format_double(d.ratio) << '\n';
  }
  gpmtm::write_text_file(std::filesystem::path(out) / "dispersion.csv", disp.str());

  for (auto id : ids) {
    const auto fit = gpmtm::poisson_fit_diagnostic(corpus, id);
    std::ostringstream csv;
    csv << "frequency,observed,predicted\n";
    for (const auto& row : fit.rows) {
      csv << row.frequency << ',' << row.observed << ',' << gpmtm::format_double(row.predicted)
          << '\n';
    }
    csv << ">" << fit.rows.back().frequency << ",0," << gpmtm::format_double(fit.predicted_tail)
        << '\n';
    gpmtm::write_text_file(std::filesystem::path(out) / ("poisson_" + corpus.vocab().term(id) + ".csv"),
                           csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-Poisson mixture and GSDMM topic models for short text"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a seeded multi-run experiment");
  gpmtm::ExperimentConfig config;
  std::vector<std::string> models = {"gpm"};
  std::string out;
  std::string input, labels, stopwords;
  run->add_option("--input", input, "Corpus file, one document per line")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--labels", labels, "Label file aligned with the corpus lines")
      ->check(CLI::ExistingFile);
  run->add_option("--stopwords", stopwords, "Stopword file overriding the bundled list")
      ->check(CLI::ExistingFile);
  run->add_option("--min-token-length", config.min_token_length)->capture_default_str();
  run->add_option("--model", models, "gpm, gsdmm or both (comma list)")
      ->delimiter(',')
      ->check(CLI::IsMember({"gpm", "gsdmm"}))
      ->capture_default_str();
  run->add_option("--k-init", config.k_init, "Starting topic counts (comma list)")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--iters", config.iterations, "Gibbs sweeps per run")->capture_default_str();
  run->add_option("--alpha", config.alpha,
                  "alpha values (comma list); GPM gamma shape, GSDMM mixing prior")
      ->delimiter(',');
  run->add_option("--beta", config.beta,
                  "beta values (comma list); GPM gamma scale, GSDMM word prior")
      ->delimiter(',');
  run->add_option("--gamma", config.gamma, "GPM Dirichlet prior on mixing weights")
      ->capture_default_str();
  run->add_option("--norm-length", config.norm_length, "GPM document length N")
      ->capture_default_str();
  run->add_option("--runs", config.runs, "Repetitions per cell")->capture_default_str();
  run->add_option("--seed", config.base_seed, "Base seed; run r uses seed + r")
      ->capture_default_str();
  run->add_option("--top-words", config.top_words, "Top words per topic for coherence")
      ->capture_default_str();
  run->add_flag("--trace-coherence", config.trace_coherence,
                "Record average coherence after every sweep");
  run->add_option("--jobs", config.jobs, "Concurrent (cell, run) fits")->capture_default_str();
  run->add_option("--out", out, "Output directory")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Print document statistics after preprocessing");
  CorpusArgs stats_corpus;
  stats_corpus.add_to(stats);

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "Poisson-fit and dispersion diagnostics");
  CorpusArgs diag_corpus;
  diag_corpus.add_to(diagnose);
  std::vector<std::string> words;
  std::string diag_out;
  diagnose->add_option("--word", words, "Word to diagnose (repeatable)")->required();
  diagnose->add_option("--out", diag_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      config.input = input;
      if (!labels.empty()) config.labels = labels;
      if (!stopwords.empty()) config.stopwords_file = stopwords;
      config.models.clear();
      for (const auto& m : models) config.models.push_back(gpmtm::parse_model(m));
      return run_command(config, out);
    }
    if (*stats) return stats_command(stats_corpus);
    if (*diagnose) return diagnose_command(diag_corpus, words, diag_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
