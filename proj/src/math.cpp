#include "gpmtm/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gpmtm/error.hpp"

namespace gpmtm {

double log_gamma_ratio(double x, std::int64_t m) {
  GPMTM_CHECK(x > 0.0, "log_gamma_ratio requires x > 0");
  GPMTM_CHECK(m >= 0, "log_gamma_ratio requires m >= 0");
  double acc = 0.0;
  for (std::int64_t j = 0; j < m; ++j) acc += std::log(x + static_cast<double>(j));
  return acc;
}

double log_sum_exp(std::span<const double> values) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (values.empty()) return kNegInf;
  const double hi = *std::max_element(values.begin(), values.end());
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

std::size_t sample_from_log_weights(std::span<const double> log_weights, double u,
                                    std::span<double> scratch) {
  GPMTM_CHECK(!log_weights.empty(), "cannot sample from an empty weight vector");
  const double hi = *std::max_element(log_weights.begin(), log_weights.end());
  GPMTM_CHECK(std::isfinite(hi), "all log-weights are -inf");
  double total = 0.0;
  for (std::size_t k = 0; k < log_weights.size(); ++k) {
    total += std::exp(log_weights[k] - hi);
    scratch[k] = total;
  }
  const double target = u * total;
  auto it = std::upper_bound(scratch.begin(), scratch.begin() + log_weights.size(), target);
  auto k = static_cast<std::size_t>(it - scratch.begin());
  // upper_bound skips zero-weight slots (equal prefix sums). u < 1 keeps
  // target < total; clamp anyway against rounding.
  if (k >= log_weights.size()) {
    k = log_weights.size() - 1;
    while (k > 0 && scratch[k] == scratch[k - 1]) --k;
  }
  return k;
}

std::size_t sample_topic(std::span<const double> log_weights, Rng& rng) {
  std::vector<double> scratch(log_weights.size());
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return sample_from_log_weights(log_weights, unif(rng), scratch);
}

}  // namespace gpmtm
