#pragma once

#include <cstdint>
#include <vector>

#include "gpmtm/corpus.hpp"
#include "gpmtm/fit_result.hpp"
#include "gpmtm/sampler_state.hpp"

// Dirichlet-multinomial mixture with collapsed Gibbs sampling (GSDMM), the
// comparison baseline. Consumes raw (not length-normalized) counts.
namespace gpmtm {

struct GsdmmHyperparams {
  double alpha = 0.1;
  double beta = 0.1;
  int k_init = 400;
  int iterations = 15;
  std::uint64_t seed = 0;

  void validate() const;
};

SamplerState init_state(const Corpus& corpus, const GsdmmHyperparams& hyper);

std::vector<double> conditional_log_weights(const SamplerState& state, const Corpus& corpus,
                                            std::size_t m, const GsdmmHyperparams& hyper);

void gibbs_sweep(SamplerState& state, const Corpus& corpus, const GsdmmHyperparams& hyper);

FitResult fit_gsdmm(const Corpus& corpus, const GsdmmHyperparams& hyper,
                    const FitOptions& options = {});

// φ̂_zv = (n_zv + β) / (n_z + Vβ)
TopicMatrix estimate_phi(const SamplerState& state, const GsdmmHyperparams& hyper);

}  // namespace gpmtm
