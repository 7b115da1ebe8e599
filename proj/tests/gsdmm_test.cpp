#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gpmtm/error.hpp"
#include "gpmtm/gsdmm.hpp"
#include "support/chains.hpp"
#include "support/oracles.hpp"

namespace gpmtm {
namespace {

using testing::make_corpus;

GsdmmHyperparams hyper(int K, double alpha = 0.1, double beta = 0.1) {
  GsdmmHyperparams h;
  h.alpha = alpha;
  h.beta = beta;
  h.k_init = K;
  return h;
}

std::function<double(std::span<const TopicId>)> dmm_joint(const Corpus& c, std::size_t K,
                                                          double alpha, double beta) {
  return [&c, K, alpha, beta](std::span<const TopicId> z) {
    return testing::dmm_joint_log_prob(c.docs(), c.vocab_size(), z, K, alpha, beta);
  };
}

TEST(Gsdmm, RequiresRawCorpus) {
  const auto corpus = make_corpus({{1, 1}}, true);
  EXPECT_THROW(init_state(corpus, hyper(2)), Error);
  EXPECT_THROW(fit_gsdmm(corpus, hyper(2)), Error);
}

TEST(GsdmmProperty, ConditionalMatchesDirichletMultinomialJoint) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_small_instance(rng);
    const auto corpus = make_corpus(inst.counts, false);
    const auto h = hyper(static_cast<int>(inst.K), inst.alpha, inst.beta);
    for (std::size_t m = 0; m < corpus.num_docs(); ++m) {
      auto state = state_from_assignments(corpus, inst.K, inst.z);
      state.remove_document(m, corpus.doc(m));
      const auto p = testing::normalize_log_weights(conditional_log_weights(state, corpus, m, h));
      const auto q = testing::conditional_from_joint(
          inst.z, m, inst.K, dmm_joint(corpus, inst.K, inst.alpha, inst.beta));
      for (std::size_t k = 0; k < inst.K; ++k) ASSERT_NEAR(p[k], q[k], 1e-8) << "trial " << trial;
    }
  }
}

TEST(Gsdmm, SweepPreservesCounts) {
  const auto corpus = make_corpus({{1, 0, 2, 0}, {0, 3, 0, 1}, {1, 1, 1, 1}, {4, 0, 0, 0}}, false);
  auto h = hyper(5);
  auto state = init_state(corpus, h);
  for (int it = 0; it < 50; ++it) {
    gibbs_sweep(state, corpus, h);
    ASSERT_TRUE(counts_consistent(state, corpus));
  }
}

TEST(Gsdmm, PhiRowsAreProbabilityVectors) {
  const auto corpus = make_corpus({{1, 0, 2, 0}, {0, 3, 0, 1}, {1, 1, 1, 1}, {4, 0, 0, 0}}, false);
  auto h = hyper(4);
  h.seed = 3;
  const auto result = fit_gsdmm(corpus, h);
  EXPECT_EQ(result.model, "gsdmm");
  for (std::size_t k = 0; k < result.rates.rows; ++k) {
    const auto row = result.rates.row(k);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(Gsdmm, SingleTopicGivesSmoothedCorpusFrequencies) {
  const auto corpus = make_corpus({{1, 0, 2}, {0, 3, 0}, {1, 1, 1}}, false);
  const auto result = fit_gsdmm(corpus, hyper(1, 0.1, 0.5));
  for (auto z : result.assignments) EXPECT_EQ(z, 0);
  const double totals[] = {2, 4, 3};
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_NEAR(result.rates(0, v), (totals[v] + 0.5) / (9 + 1.5), 1e-15);
  }
}

TEST(Gsdmm, Deterministic) {
  const auto corpus = make_corpus({{1, 0, 2, 0}, {0, 3, 0, 1}, {1, 1, 1, 1}, {4, 0, 0, 0}}, false);
  auto h = hyper(6);
  h.seed = 11;
  const auto a = fit_gsdmm(corpus, h);
  const auto b = fit_gsdmm(corpus, h);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.rates.values, b.rates.values);
}

TEST(Gsdmm, ExactPosteriorRecovery) {
  const auto corpus = make_corpus(testing::toy_counts(), false);
  auto h = hyper(2, 1.0, 0.5);
  h.seed = 21;
  const auto exact = testing::enumerate_posterior(3, 2, dmm_joint(corpus, 2, 1.0, 0.5));
  const auto empirical = testing::empirical_assignment_distribution(corpus, h, 1000, 50000);
  EXPECT_LT(testing::total_variation(empirical, exact), 0.05);
}

}  // namespace
}  // namespace gpmtm
