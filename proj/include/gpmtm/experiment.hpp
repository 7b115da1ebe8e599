#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/evaluation.hpp"
#include "gpmtm/fit_result.hpp"

namespace gpmtm {

enum class Model { kGpm, kGsdmm };

std::string_view model_name(Model m);
Model parse_model(std::string_view name);

// One experiment = models × k_init × alpha × beta cells, each repeated `runs`
// times with seed base_seed + run. Empty alpha/beta lists mean the model's
// default (GPM 0.001, GSDMM 0.1).
struct ExperimentConfig {
  std::vector<Model> models = {Model::kGpm};
  std::filesystem::path input;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> stopwords_file;
  std::size_t min_token_length = 2;
  std::vector<int> k_init = {400};
  std::vector<double> alpha;
  std::vector<double> beta;
  double gamma = 0.1;
  int iterations = 15;
  int norm_length = 20;
  int runs = 1;
  std::uint64_t base_seed = 1;
  std::size_t top_words = 10;
  bool trace_coherence = false;
  int jobs = 1;

  void validate() const;
  // Canonical JSON of everything that affects results (not jobs or paths'
  // output location).
  std::string canonical_json() const;
  std::uint64_t hash() const;
};

struct CellSpec {
  std::size_t id = 0;
  Model model = Model::kGpm;
  int k_init = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;  // unused by GSDMM
};

struct RunRecord {
  std::size_t cell = 0;
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t nonempty_topics = 0;
  double avg_coherence = 0.0;
  std::vector<TraceRecord> trace;
  std::vector<TopicSummary> topics;
  double wall_time_seconds = 0.0;
  std::uint64_t fit_corpus_checksum = 0;
};

struct CellSummary {
  CellSpec cell;
  std::size_t runs_ok = 0;
  double topics_mean = 0.0;
  double topics_sd = 0.0;  // sample sd, 0 for a single run
  double coherence_mean = 0.0;
  double coherence_sd = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::shared_ptr<const Corpus> corpus;  // preprocessed, pre-normalization
  std::size_t num_raw_documents = 0;
  std::vector<CellSpec> cells;
  std::vector<RunRecord> records;  // cell-major, then run
  std::vector<CellSummary> summary;

  bool all_ok() const;
  std::vector<const RunRecord*> records_for(std::size_t cell) const;
};

std::vector<CellSpec> expand_cells(const ExperimentConfig& config);

// Loads and preprocesses config.input, then runs every cell.
ExperimentResult run_experiment(const ExperimentConfig& config);
// Same, on an already-preprocessed corpus.
ExperimentResult run_experiment(const ExperimentConfig& config, std::shared_ptr<const Corpus> corpus,
                                std::size_t num_raw_documents);

RunRecord run_cell(const CellSpec& cell, int run, const ExperimentConfig& config,
                   const Corpus& raw, const Corpus* normalized, const InvertedIndex& index);

std::vector<CellSummary> aggregate(const std::vector<CellSpec>& cells,
                                   const std::vector<RunRecord>& records);

// Writes, under out_dir:
//   summary.csv                 one row per cell
//   manifest.json               version, config, config hash, corpus checksums, seeds
//   timings.csv                 wall time per run (the only nondeterministic file)
//   runs/cell<C>_run<R>_trace.csv, runs/cell<C>_run<R>_topics.tsv
void emit_reports(const ExperimentResult& result, const std::filesystem::path& out_dir);

std::string summary_csv(const std::vector<CellSummary>& summary);
std::string experiment_manifest_json(const ExperimentResult& result);

std::string_view artifact_version();

}  // namespace gpmtm
