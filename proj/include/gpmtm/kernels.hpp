#pragma once

#include <span>

#include "gpmtm/corpus.hpp"
#include "gpmtm/sampler_state.hpp"

// Per-document conditional log-weights over all K topics. Each model has a
// straightforward serial reference and an OpenMP kernel; the two must agree to
// rounding (tests and bench/ compare them). The document must already be
// removed from the state's counts. Terms constant in z are dropped.
namespace gpmtm::kernels {

struct GpmParams {
  double alpha;  // gamma shape
  double beta;   // gamma scale
  double gamma;  // Dirichlet on mixing weights
};

struct GsdmmParams {
  double alpha;  // Dirichlet on mixing weights
  double beta;   // Dirichlet on topic-word distributions
};

// log(m+γ) + (n+Vα) log(mβ+1) - (n+N+Vα) log(mβ+β+1) + Σ_v log Γ(n_zv+α+x_v)/Γ(n_zv+α)
void gpm_log_weights_reference(const SamplerState& state, const Document& doc,
                               const GpmParams& p, std::span<double> out);
void gpm_log_weights(const SamplerState& state, const Document& doc, const GpmParams& p,
                     std::span<double> out);

// log(m+α) + Σ_v Σ_j log(n_zv+β+j-1) - Σ_{i=1..N} log(n_z+Vβ+i-1)
void gsdmm_log_weights_reference(const SamplerState& state, const Document& doc,
                                 const GsdmmParams& p, std::span<double> out);
void gsdmm_log_weights(const SamplerState& state, const Document& doc, const GsdmmParams& p,
                       std::span<double> out);

// Work (topic·word terms) below which the OpenMP kernels stay on one thread.
inline constexpr std::size_t kParallelWorkThreshold = 4096;

}  // namespace gpmtm::kernels
