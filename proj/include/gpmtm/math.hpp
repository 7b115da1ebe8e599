#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace gpmtm {

using Rng = std::mt19937_64;

// log Γ(x + m) / Γ(x) = Σ_{j=1..m} log(x + j - 1). Requires x > 0.
double log_gamma_ratio(double x, std::int64_t m);

// Numerically stable log Σ exp(v). Returns -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> values);

// Draws an index with probability proportional to exp(log_weights[i]).
// Throws when no weight is finite.
std::size_t sample_topic(std::span<const double> log_weights, Rng& rng);

// sample_topic with a caller-supplied uniform u in [0, 1); scratch must hold
// log_weights.size() doubles.
std::size_t sample_from_log_weights(std::span<const double> log_weights, double u,
                                    std::span<double> scratch);

}  // namespace gpmtm
