#include "gpmtm/gsdmm.hpp"

#include "gpmtm/kernels.hpp"
#include "sweep_engine.hpp"

namespace gpmtm {

void GsdmmHyperparams::validate() const {
  GPMTM_CHECK(alpha > 0.0, "alpha must be > 0");
  GPMTM_CHECK(beta > 0.0, "beta must be > 0");
  GPMTM_CHECK(k_init >= 1, "k_init must be >= 1");
  GPMTM_CHECK(iterations >= 1, "iterations must be >= 1");
}

namespace {

kernels::GsdmmParams kernel_params(const GsdmmHyperparams& h) { return {h.alpha, h.beta}; }

}  // namespace

SamplerState init_state(const Corpus& corpus, const GsdmmHyperparams& hyper) {
  hyper.validate();
  GPMTM_CHECK(!corpus.normalized(), "GSDMM consumes raw counts, not a normalized corpus");
  return init_uniform_state(corpus, static_cast<std::size_t>(hyper.k_init), hyper.seed);
}

std::vector<double> conditional_log_weights(const SamplerState& state, const Corpus& corpus,
                                            std::size_t m, const GsdmmHyperparams& hyper) {
  detail::require_excluded(state, corpus, m);
  std::vector<double> out(state.num_topics());
  kernels::gsdmm_log_weights(state, corpus.doc(m), kernel_params(hyper), out);
  return out;
}

void gibbs_sweep(SamplerState& state, const Corpus& corpus, const GsdmmHyperparams& hyper) {
  const auto params = kernel_params(hyper);
  detail::SweepWorkspace ws(state.num_topics());
  ws.sweep(state, corpus, [&](const SamplerState& s, const Document& d, std::span<double> out) {
    kernels::gsdmm_log_weights(s, d, params, out);
  });
}

FitResult fit_gsdmm(const Corpus& corpus, const GsdmmHyperparams& hyper,
                    const FitOptions& options) {
  auto state = init_state(corpus, hyper);
  const auto params = kernel_params(hyper);
  std::vector<std::pair<std::string, double>> echo = {{"alpha", hyper.alpha},
                                                      {"beta", hyper.beta},
                                                      {"k_init", hyper.k_init},
                                                      {"iterations", hyper.iterations}};
  return detail::run_fit(
      "gsdmm", corpus, std::move(state), hyper.iterations, hyper.seed, std::move(echo), options,
      [&](const SamplerState& s, const Document& d, std::span<double> out) {
        kernels::gsdmm_log_weights(s, d, params, out);
      },
      [&](const SamplerState& s) { return estimate_phi(s, hyper); });
}

TopicMatrix estimate_phi(const SamplerState& state, const GsdmmHyperparams& hyper) {
  TopicMatrix phi(state.num_topics(), state.vocab_size());
  const double v_beta = static_cast<double>(state.vocab_size()) * hyper.beta;
  for (std::size_t k = 0; k < state.num_topics(); ++k) {
    const double denom = static_cast<double>(state.word_count(k)) + v_beta;
    for (WordId v = 0; v < state.vocab_size(); ++v) {
      phi(k, v) = (state.word_topic_count(k, v) + hyper.beta) / denom;
    }
  }
  return phi;
}

}  // namespace gpmtm
