#include "gpmtm/gpm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpmtm/kernels.hpp"
#include "sweep_engine.hpp"

namespace gpmtm {

void Hyperparams::validate() const {
  GPMTM_CHECK(alpha > 0.0, "alpha must be > 0");
  GPMTM_CHECK(beta > 0.0, "beta must be > 0");
  GPMTM_CHECK(gamma_prior > 0.0, "gamma must be > 0");
  GPMTM_CHECK(k_init >= 1, "k_init must be >= 1");
  GPMTM_CHECK(iterations >= 1, "iterations must be >= 1");
  GPMTM_CHECK(norm_length >= 1, "norm_length must be >= 1");
}

namespace {

kernels::GpmParams kernel_params(const Hyperparams& h) {
  return {h.alpha, h.beta, h.gamma_prior};
}

std::vector<std::pair<std::string, double>> echo(const Hyperparams& h) {
  return {{"alpha", h.alpha},
          {"beta", h.beta},
          {"gamma", h.gamma_prior},
          {"k_init", h.k_init},
          {"iterations", h.iterations},
          {"norm_length", h.norm_length}};
}

}  // namespace

SamplerState init_state(const Corpus& corpus, const Hyperparams& hyper) {
  hyper.validate();
  GPMTM_CHECK(corpus.normalized(), "GPM requires a length-normalized corpus");
  return init_uniform_state(corpus, static_cast<std::size_t>(hyper.k_init), hyper.seed);
}

std::vector<double> conditional_log_weights(const SamplerState& state, const Corpus& corpus,
                                            std::size_t m, const Hyperparams& hyper) {
  detail::require_excluded(state, corpus, m);
  std::vector<double> out(state.num_topics());
  kernels::gpm_log_weights(state, corpus.doc(m), kernel_params(hyper), out);
  return out;
}

void gibbs_sweep(SamplerState& state, const Corpus& corpus, const Hyperparams& hyper) {
  const auto params = kernel_params(hyper);
  detail::SweepWorkspace ws(state.num_topics());
  ws.sweep(state, corpus, [&](const SamplerState& s, const Document& d, std::span<double> out) {
    kernels::gpm_log_weights(s, d, params, out);
  });
}

FitResult fit(const Corpus& corpus, const Hyperparams& hyper, const FitOptions& options) {
  auto state = init_state(corpus, hyper);
  const auto params = kernel_params(hyper);
  return detail::run_fit(
      "gpm", corpus, std::move(state), hyper.iterations, hyper.seed, echo(hyper), options,
      [&](const SamplerState& s, const Document& d, std::span<double> out) {
        kernels::gpm_log_weights(s, d, params, out);
      },
      [&](const SamplerState& s) { return estimate_lambda(s, hyper); });
}

JointPriors JointPriors::uniform(std::size_t V, std::size_t K, double alpha, double beta,
                                 double gamma) {
  return {std::vector<double>(V, alpha), std::vector<double>(V, beta),
          std::vector<double>(K, gamma)};
}

double joint_log_prob(std::span<const Document> docs, std::size_t vocab_size,
                      std::span<const TopicId> z, const JointPriors& priors) {
  const std::size_t K = priors.gamma.size();
  const std::size_t V = vocab_size;
  GPMTM_CHECK(K >= 1, "need at least one topic");
  GPMTM_CHECK(priors.alpha.size() == V && priors.beta.size() == V,
              "alpha and beta must have one entry per word");
  GPMTM_CHECK(z.size() == docs.size(), "assignment vector has wrong length");

  std::vector<double> m(K, 0.0);
  std::vector<double> nkv(K * V, 0.0);
  double log_fact = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    GPMTM_CHECK(z[d] >= 0 && static_cast<std::size_t>(z[d]) < K, "invalid topic assignment");
    const auto k = static_cast<std::size_t>(z[d]);
    m[k] += 1.0;
    for (const auto& e : docs[d].entries) {
      GPMTM_CHECK(e.word < V, "word id out of range");
      nkv[k * V + e.word] += e.count;
      log_fact += std::lgamma(e.count + 1.0);
    }
  }

  double lp = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    lp += std::lgamma(m[k] + priors.gamma[k]) - std::lgamma(priors.gamma[k]);
    gamma_sum += priors.gamma[k];
  }
  lp += std::lgamma(gamma_sum) - std::lgamma(gamma_sum + static_cast<double>(docs.size()));

  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t v = 0; v < V; ++v) {
      const double n = nkv[k * V + v];
      const double a = priors.alpha[v];
      const double b = priors.beta[v];
      lp += std::lgamma(n + a) - std::lgamma(a) + n * std::log(b) -
            (n + a) * std::log(m[k] * b + 1.0);
    }
  }
  return lp - log_fact;
}

double joint_log_prob(const Corpus& corpus, std::span<const TopicId> z, const Hyperparams& hyper) {
  hyper.validate();
  return joint_log_prob(corpus.docs(), corpus.vocab_size(), z,
                        JointPriors::uniform(corpus.vocab_size(),
                                             static_cast<std::size_t>(hyper.k_init), hyper.alpha,
                                             hyper.beta, hyper.gamma_prior));
}

TopicMatrix estimate_lambda(const SamplerState& state, const Hyperparams& hyper) {
  TopicMatrix rates(state.num_topics(), state.vocab_size());
  const double inv_beta = 1.0 / hyper.beta;
  for (std::size_t k = 0; k < state.num_topics(); ++k) {
    const double denom = state.doc_count(k) + inv_beta;
    for (WordId v = 0; v < state.vocab_size(); ++v) {
      rates(k, v) = (state.word_topic_count(k, v) + hyper.alpha) / denom;
    }
  }
  return rates;
}

std::size_t count_nonempty(std::span<const std::int32_t> doc_counts) {
  return static_cast<std::size_t>(
      std::count_if(doc_counts.begin(), doc_counts.end(), [](std::int32_t c) { return c > 0; }));
}

}  // namespace gpmtm
