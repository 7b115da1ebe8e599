#include "gpmtm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gpmtm/error.hpp"
#include "gpmtm/gpm.hpp"
#include "gpmtm/gsdmm.hpp"
#include "gpmtm/hash.hpp"
#include "gpmtm/report.hpp"

#ifndef GPMTM_VERSION
#define GPMTM_VERSION "0.0.0"
#endif

namespace gpmtm {

using ojson = nlohmann::ordered_json;

std::string_view artifact_version() { return GPMTM_VERSION; }

std::string_view model_name(Model m) { return m == Model::kGpm ? "gpm" : "gsdmm"; }

Model parse_model(std::string_view name) {
  if (name == "gpm") return Model::kGpm;
  if (name == "gsdmm") return Model::kGsdmm;
  throw Error("unknown model: " + std::string(name));
}

void ExperimentConfig::validate() const {
  GPMTM_CHECK(!models.empty(), "at least one model is required");
  GPMTM_CHECK(!k_init.empty(), "k_init list must be nonempty");
  for (int k : k_init) GPMTM_CHECK(k >= 1, "k_init values must be >= 1");
  for (double a : alpha) GPMTM_CHECK(a > 0.0, "alpha values must be > 0");
  for (double b : beta) GPMTM_CHECK(b > 0.0, "beta values must be > 0");
  GPMTM_CHECK(gamma > 0.0, "gamma must be > 0");
  GPMTM_CHECK(iterations >= 1, "iterations must be >= 1");
  GPMTM_CHECK(norm_length >= 1, "norm_length must be >= 1");
  GPMTM_CHECK(runs >= 1, "runs must be >= 1");
  GPMTM_CHECK(top_words >= 2, "top_words must be >= 2");
  GPMTM_CHECK(jobs >= 1, "jobs must be >= 1");
}

namespace {

ojson config_json(const ExperimentConfig& c) {
  ojson j;
  j["models"] = ojson::array();
  for (auto m : c.models) j["models"].push_back(std::string(model_name(m)));
  j["input"] = c.input.string();
  j["labels"] = c.labels ? ojson(c.labels->string()) : ojson(nullptr);
  j["stopwords"] = c.stopwords_file ? c.stopwords_file->string() : std::string(kStopwordListVersion);
  j["min_token_length"] = c.min_token_length;
  j["k_init"] = c.k_init;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["iterations"] = c.iterations;
  j["norm_length"] = c.norm_length;
  j["runs"] = c.runs;
  j["base_seed"] = c.base_seed;
  j["top_words"] = c.top_words;
  j["trace_coherence"] = c.trace_coherence;
  return j;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::string run_stem(const RunRecord& r) {
  return "cell" + std::to_string(r.cell) + "_run" + std::to_string(r.run);
}

}  // namespace

std::string ExperimentConfig::canonical_json() const { return config_json(*this).dump(); }

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical_json()); }

bool ExperimentResult::all_ok() const {
  return std::all_of(records.begin(), records.end(), [](const RunRecord& r) { return r.ok; });
}

std::vector<const RunRecord*> ExperimentResult::records_for(std::size_t cell) const {
  std::vector<const RunRecord*> out;
  for (const auto& r : records) {
    if (r.cell == cell) out.push_back(&r);
  }
  return out;
}

std::vector<CellSpec> expand_cells(const ExperimentConfig& config) {
  std::vector<CellSpec> cells;
  for (Model model : config.models) {
    const double def = model == Model::kGpm ? Hyperparams{}.alpha : GsdmmHyperparams{}.alpha;
    const std::vector<double> alphas = config.alpha.empty() ? std::vector<double>{def} : config.alpha;
    const std::vector<double> betas = config.beta.empty() ? std::vector<double>{def} : config.beta;
    for (int k : config.k_init) {
      for (double a : alphas) {
        for (double b : betas) {
          cells.push_back({cells.size(), model, k, a, b, config.gamma});
        }
      }
    }
  }
  return cells;
}

RunRecord run_cell(const CellSpec& cell, int run, const ExperimentConfig& config,
                   const Corpus& raw, const Corpus* normalized, const InvertedIndex& index) {
  RunRecord rec;
  rec.cell = cell.id;
  rec.run = run;
  rec.seed = config.base_seed + static_cast<std::uint64_t>(run);
  try {
    FitResult fit;
    if (cell.model == Model::kGpm) {
      GPMTM_CHECK(normalized != nullptr, "normalized corpus missing for GPM cell");
      Hyperparams h;
      h.alpha = cell.alpha;
      h.beta = cell.beta;
      h.gamma_prior = cell.gamma;
      h.k_init = cell.k_init;
      h.iterations = config.iterations;
      h.norm_length = config.norm_length;
      h.seed = rec.seed;
      FitOptions opts;
      if (config.trace_coherence) {
        opts.iteration_scorer = [&](const SamplerState& s) {
          return average_coherence(estimate_lambda(s, h), s.doc_counts(), index, config.top_words);
        };
      }
      fit = gpmtm::fit(*normalized, h, opts);
      rec.fit_corpus_checksum = normalized->checksum();
    } else {
      GsdmmHyperparams h;
      h.alpha = cell.alpha;
      h.beta = cell.beta;
      h.k_init = cell.k_init;
      h.iterations = config.iterations;
      h.seed = rec.seed;
      FitOptions opts;
      if (config.trace_coherence) {
        opts.iteration_scorer = [&](const SamplerState& s) {
          return average_coherence(estimate_phi(s, h), s.doc_counts(), index, config.top_words);
        };
      }
      fit = fit_gsdmm(raw, h, opts);
      rec.fit_corpus_checksum = raw.checksum();
    }
    rec.nonempty_topics = fit.nonempty_topics;
    rec.trace = fit.trace;
    rec.topics = summarize_topics(fit.rates, fit.topic_doc_counts, index, config.top_words);
    double sum = 0.0;
    for (const auto& t : rec.topics) sum += t.coherence;
    rec.avg_coherence = sum / static_cast<double>(rec.topics.size());
    rec.wall_time_seconds = fit.wall_time_seconds;
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

std::vector<CellSummary> aggregate(const std::vector<CellSpec>& cells,
                                   const std::vector<RunRecord>& records) {
  std::vector<CellSummary> out;
  for (const auto& cell : cells) {
    std::vector<double> topics, coherence;
    for (const auto& r : records) {
      if (r.cell != cell.id || !r.ok) continue;
      topics.push_back(static_cast<double>(r.nonempty_topics));
      coherence.push_back(r.avg_coherence);
    }
    CellSummary s;
    s.cell = cell;
    s.runs_ok = topics.size();
    if (!topics.empty()) {
      s.topics_mean = mean_of(topics);
      s.topics_sd = sample_sd(topics);
      s.coherence_mean = mean_of(coherence);
      s.coherence_sd = sample_sd(coherence);
    }
    out.push_back(s);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::shared_ptr<const Corpus> corpus,
                                std::size_t num_raw_documents) {
  config.validate();
  GPMTM_CHECK(corpus != nullptr, "corpus is required");
  GPMTM_CHECK(!corpus->normalized(), "experiments start from the pre-normalization corpus");

  ExperimentResult result;
  result.config = config;
  result.corpus = corpus;
  result.num_raw_documents = num_raw_documents;
  result.cells = expand_cells(config);

  std::optional<Corpus> normalized;
  const bool any_gpm = std::any_of(result.cells.begin(), result.cells.end(),
                                   [](const CellSpec& c) { return c.model == Model::kGpm; });
  if (any_gpm) normalized = normalize_lengths(*corpus, config.norm_length);
  const InvertedIndex index(*corpus);

  const std::size_t runs = static_cast<std::size_t>(config.runs);
  const long long jobs = static_cast<long long>(result.cells.size() * runs);
  result.records.resize(static_cast<std::size_t>(jobs));
  const Corpus* norm_ptr = normalized ? &*normalized : nullptr;
  // Independent (cell, run) fits; each owns its state and seed.
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.jobs) if (config.jobs > 1)
  for (long long j = 0; j < jobs; ++j) {
    const auto cell = static_cast<std::size_t>(j) / runs;
    const auto run = static_cast<int>(static_cast<std::size_t>(j) % runs);
    result.records[static_cast<std::size_t>(j)] =
        run_cell(result.cells[cell], run, config, *corpus, norm_ptr, index);
  }
  result.summary = aggregate(result.cells, result.records);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  auto raw = load_corpus(config.input, config.labels);
  auto options = PreprocessOptions::defaults();
  if (config.stopwords_file) options.stopwords = load_stopword_file(*config.stopwords_file);
  options.min_token_length = config.min_token_length;
  auto corpus = std::make_shared<const Corpus>(preprocess(raw, options));
  return run_experiment(config, std::move(corpus), raw.texts.size());
}

std::string summary_csv(const std::vector<CellSummary>& summary) {
  std::ostringstream out;
  out << "cell,model,k_init,alpha,beta,gamma,runs_ok,topics_mean,topics_sd,coherence_mean,"
         "coherence_sd\n";
  for (const auto& s : summary) {
    out << s.cell.id << ',' << model_name(s.cell.model) << ',' << s.cell.k_init << ','
        << format_double(s.cell.alpha) << ',' << format_double(s.cell.beta) << ',';
    if (s.cell.model == Model::kGpm) out << format_double(s.cell.gamma);
    out << ',' << s.runs_ok << ',';
    if (s.runs_ok > 0) {
      out << format_double(s.topics_mean) << ',' << format_double(s.topics_sd) << ','
          << format_double(s.coherence_mean) << ',' << format_double(s.coherence_sd);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string experiment_manifest_json(const ExperimentResult& result) {
  const auto& corpus = *result.corpus;
  ojson j;
  j["artifact"] = "gpmtm";
  j["version"] = std::string(artifact_version());
  j["config"] = config_json(result.config);
  j["config_hash"] = hex64(result.config.hash());
  j["corpus"] = {{"raw_documents", result.num_raw_documents},
                 {"documents", corpus.num_docs()},
                 {"dropped_documents", result.num_raw_documents - corpus.num_docs()},
                 {"vocab_size", corpus.vocab_size()},
                 {"checksum", hex64(corpus.checksum())}};
  j["cells"] = ojson::array();
  for (const auto& cell : result.cells) {
    ojson c;
    c["cell"] = cell.id;
    c["model"] = std::string(model_name(cell.model));
    c["k_init"] = cell.k_init;
    c["alpha"] = cell.alpha;
    c["beta"] = cell.beta;
    if (cell.model == Model::kGpm) c["gamma"] = cell.gamma;
    c["length_normalized"] = cell.model == Model::kGpm;
    c["preprocessed_checksum"] = hex64(corpus.checksum());
    c["runs"] = ojson::array();
    for (const auto* r : result.records_for(cell.id)) {
      ojson rj;
      rj["run"] = r->run;
      rj["seed"] = r->seed;
      rj["ok"] = r->ok;
      if (r->ok) {
        rj["nonempty_topics"] = r->nonempty_topics;
        rj["avg_coherence"] = r->avg_coherence;
        rj["fit_corpus_checksum"] = hex64(r->fit_corpus_checksum);
        rj["trace_file"] = "runs/" + run_stem(*r) + "_trace.csv";
        rj["topics_file"] = "runs/" + run_stem(*r) + "_topics.tsv";
      } else {
        rj["error"] = r->error;
      }
      c["runs"].push_back(rj);
    }
    j["cells"].push_back(c);
  }
  return j.dump(2) + "\n";
}

void emit_reports(const ExperimentResult& result, const std::filesystem::path& out_dir) {
  GPMTM_CHECK(!result.records.empty(), "no run records to report");
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "runs", ec);
  if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  write_text_file(out_dir / "summary.csv", summary_csv(result.summary));
  write_text_file(out_dir / "manifest.json", experiment_manifest_json(result));

  std::ostringstream timings;
  timings << "cell,run,seed,wall_time_s\n";
  for (const auto& r : result.records) {
    timings << r.cell << ',' << r.run << ',' << r.seed << ',' << format_double(r.wall_time_seconds)
            << '\n';
    if (!r.ok) continue;
    write_text_file(out_dir / "runs" / (run_stem(r) + "_trace.csv"), trace_csv(r.trace));
    write_text_file(out_dir / "runs" / (run_stem(r) + "_topics.tsv"),
                    topics_tsv(r.topics, result.corpus->vocab()));
  }
  write_text_file(out_dir / "timings.csv", timings.str());
}

}  // namespace gpmtm
