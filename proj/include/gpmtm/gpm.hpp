#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/fit_result.hpp"
#include "gpmtm/sampler_state.hpp"

// Gamma-Poisson mixture: x_mv | z_m=k ~ Poisson(λ_kv), λ_kv ~ Gamma(α, β)
// (shape, scale), z ~ Categorical(π), π ~ Dirichlet(γ). λ and π are
// integrated out; only z is sampled.
namespace gpmtm {

struct Hyperparams {
  double alpha = 0.001;
  double beta = 0.001;
  double gamma_prior = 0.1;
  int k_init = 400;
  int iterations = 15;
  int norm_length = 20;
  std::uint64_t seed = 0;

  void validate() const;
};

// Requires a length-normalized corpus.
SamplerState init_state(const Corpus& corpus, const Hyperparams& hyper);

// Log of the collapsed conditional p(z_m = z | z^(m), x) over all topics, up to
// an additive constant. Document m must be excluded from the counts.
std::vector<double> conditional_log_weights(const SamplerState& state, const Corpus& corpus,
                                            std::size_t m, const Hyperparams& hyper);

// One pass over the documents in corpus order.
void gibbs_sweep(SamplerState& state, const Corpus& corpus, const Hyperparams& hyper);

FitResult fit(const Corpus& corpus, const Hyperparams& hyper, const FitOptions& options = {});

// Per-word gamma priors and per-topic Dirichlet prior for the joint density.
struct JointPriors {
  std::vector<double> alpha;  // size V
  std::vector<double> beta;   // size V
  std::vector<double> gamma;  // size K

  static JointPriors uniform(std::size_t V, std::size_t K, double alpha, double beta,
                             double gamma);
};

// log p(x, z | α, β, γ) with λ and π integrated out:
//   log Δ(m+γ)/Δ(γ)
//   + Σ_k Σ_v [log Γ(n_kv+α_v) - log Γ(α_v) + n_kv log β_v - (n_kv+α_v) log(m_k β_v + 1)]
//   - Σ_m Σ_v log x_mv!
// Documents may be empty here (zero counts are allowed in the joint).
double joint_log_prob(std::span<const Document> docs, std::size_t vocab_size,
                      std::span<const TopicId> z, const JointPriors& priors);
double joint_log_prob(const Corpus& corpus, std::span<const TopicId> z, const Hyperparams& hyper);

// Posterior mean λ̂_kv = (n_kv + α) / (m_k + 1/β); empty topics give αβ.
TopicMatrix estimate_lambda(const SamplerState& state, const Hyperparams& hyper);

}  // namespace gpmtm
