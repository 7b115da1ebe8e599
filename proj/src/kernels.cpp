#include "gpmtm/kernels.hpp"

#include <cmath>

#include "gpmtm/error.hpp"

namespace gpmtm::kernels {

namespace {

void check_output(const SamplerState& state, std::span<double> out) {
  GPMTM_CHECK(out.size() == state.num_topics(), "output span must hold K weights");
}

// Σ_j log(a + j) for j = 0..x-1
inline double rising_log(double a, std::int32_t x) {
  double acc = 0.0;
  for (std::int32_t j = 0; j < x; ++j) acc += std::log(a + j);
  return acc;
}

inline double gpm_topic_weight(const SamplerState& state, const Document& doc,
                               const GpmParams& p, double v_alpha, std::size_t k) {
  const double m = state.doc_count(k);
  const double n = static_cast<double>(state.word_count(k));
  double w = std::log(m + p.gamma) + (n + v_alpha) * std::log(m * p.beta + 1.0) -
             (n + doc.length + v_alpha) * std::log(m * p.beta + p.beta + 1.0);
  for (const auto& e : doc.entries) {
    w += rising_log(state.word_row(e.word)[k] + p.alpha, e.count);
  }
  return w;
}

inline double gsdmm_topic_weight(const SamplerState& state, const Document& doc,
                                 const GsdmmParams& p, double v_beta, std::size_t k) {
  const double m = state.doc_count(k);
  const double n = static_cast<double>(state.word_count(k));
  double w = std::log(m + p.alpha);
  for (const auto& e : doc.entries) {
    w += rising_log(state.word_row(e.word)[k] + p.beta, e.count);
  }
  w -= rising_log(n + v_beta, doc.length);
  return w;
}

}  // namespace

void gpm_log_weights_reference(const SamplerState& state, const Document& doc,
                               const GpmParams& p, std::span<double> out) {
  check_output(state, out);
  const double V = static_cast<double>(state.vocab_size());
  for (std::size_t k = 0; k < state.num_topics(); ++k) {
    const double m = state.doc_count(k);
    const double n = static_cast<double>(state.word_count(k));
    double w = std::log(m + p.gamma);
    w += (n + V * p.alpha) * std::log(m * p.beta + 1.0);
    w -= (n + doc.length + V * p.alpha) * std::log(m * p.beta + p.beta + 1.0);
    for (const auto& e : doc.entries) {
      w += log_gamma_ratio(state.word_topic_count(k, e.word) + p.alpha, e.count);
    }
    out[k] = w;
  }
}

void gpm_log_weights(const SamplerState& state, const Document& doc, const GpmParams& p,
                     std::span<double> out) {
  check_output(state, out);
  const std::size_t K = state.num_topics();
  const double v_alpha = static_cast<double>(state.vocab_size()) * p.alpha;

  // Every empty topic has m = n = n_zv = 0 and therefore the same weight.
  double empty_weight = std::log(p.gamma) - (doc.length + v_alpha) * std::log(p.beta + 1.0);
  for (const auto& e : doc.entries) empty_weight += rising_log(p.alpha, e.count);

  const std::size_t work = state.nonempty_topics() * (doc.entries.size() + 2);
  const long long K_ll = static_cast<long long>(K);
#pragma omp parallel for schedule(static) if (work >= kParallelWorkThreshold)
  for (long long kk = 0; kk < K_ll; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    out[k] = state.doc_count(k) == 0 ? empty_weight
                                     : gpm_topic_weight(state, doc, p, v_alpha, k);
  }
}

void gsdmm_log_weights_reference(const SamplerState& state, const Document& doc,
                                 const GsdmmParams& p, std::span<double> out) {
  check_output(state, out);
  const double V = static_cast<double>(state.vocab_size());
  for (std::size_t k = 0; k < state.num_topics(); ++k) {
    const double m = state.doc_count(k);
    const double n = static_cast<double>(state.word_count(k));
    double w = std::log(m + p.alpha);
    for (const auto& e : doc.entries) {
      w += log_gamma_ratio(state.word_topic_count(k, e.word) + p.beta, e.count);
    }
    w -= log_gamma_ratio(n + V * p.beta, doc.length);
    out[k] = w;
  }
}

void gsdmm_log_weights(const SamplerState& state, const Document& doc, const GsdmmParams& p,
                       std::span<double> out) {
  check_output(state, out);
  const std::size_t K = state.num_topics();
  const double v_beta = static_cast<double>(state.vocab_size()) * p.beta;

  double empty_weight = std::log(p.alpha);
  for (const auto& e : doc.entries) empty_weight += rising_log(p.beta, e.count);
  empty_weight -= rising_log(v_beta, doc.length);

  const std::size_t work = state.nonempty_topics() * (doc.entries.size() + doc.length + 1);
  const long long K_ll = static_cast<long long>(K);
#pragma omp parallel for schedule(static) if (work >= kParallelWorkThreshold)
  for (long long kk = 0; kk < K_ll; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    out[k] = state.doc_count(k) == 0 ? empty_weight
                                     : gsdmm_topic_weight(state, doc, p, v_beta, k);
  }
}

}  // namespace gpmtm::kernels
