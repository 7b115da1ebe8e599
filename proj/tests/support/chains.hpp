#pragma once

// Long-run Gibbs chains on toy instances for comparison against an exact
// enumerated posterior.

#include <vector>

#include "gpmtm/gpm.hpp"
#include "gpmtm/gsdmm.hpp"
#include "support/oracles.hpp"

namespace gpmtm::testing {

template <class Hyper>
std::vector<double> empirical_assignment_distribution(const Corpus& corpus, const Hyper& hyper,
                                                      int burn_in, int samples) {
  auto state = init_state(corpus, hyper);
  const auto K = static_cast<std::size_t>(hyper.k_init);
  std::size_t total = 1;
  for (std::size_t m = 0; m < corpus.num_docs(); ++m) total *= K;
  std::vector<double> freq(total, 0.0);
  for (int i = 0; i < burn_in; ++i) gibbs_sweep(state, corpus, hyper);
  for (int i = 0; i < samples; ++i) {
    gibbs_sweep(state, corpus, hyper);
    freq[assignment_index(state.assignments(), K)] += 1.0;
  }
  for (auto& f : freq) f /= samples;
  return freq;
}

// Fixed 3-document, V = 3 toy instance shared by the GPM and GSDMM checks.
inline std::vector<std::vector<int>> toy_counts() { return {{2, 1, 0}, {0, 1, 2}, {1, 0, 1}}; }

}  // namespace gpmtm::testing
