// Multinomial sufficient statistics and approximate posterior sampling.
//
// A parameter group with nu possible values and counts (n_1..n_nu, N) gets a
// point estimate either by MLE or by interpolation with the uniform
// distribution ("smoothing"), and committee members are drawn by perturbing
// each entry with a normal whose variance shrinks as 1/N, truncated to [0,1],
// then renormalizing the vector.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qbc/rng.hpp"

namespace qbc {

using ProbabilityVector = std::vector<double>;

// Occurrence counts for one multinomial parameter group. `total` is kept
// equal to the sum of `counts`.
struct EventCounts {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  std::size_t value_count() const { return counts.size(); }
  static EventCounts of(std::vector<std::int64_t> counts);
  void add(std::size_t value, std::int64_t n = 1);
  bool operator==(const EventCounts&) const = default;
};

// Committee-sampling knobs: `temperature` multiplies the posterior variance
// (t>0), `smoothing` is the uniform-interpolation weight lambda in [0,1).
struct SamplingConfig {
  double temperature = 1.0;
  double smoothing = 0.05;
};

void validate(const SamplingConfig& cfg);

// n_i / N. Requires N > 0.
ProbabilityVector mle(const EventCounts& ec);

// ((1-lambda) n_i + lambda) / ((1-lambda) N + lambda nu). Sums to one by
// construction; N == 0 yields the uniform vector exactly.
ProbabilityVector smoothed_estimate(const EventCounts& ec, double lambda);
void smoothed_estimate(std::span<const std::int64_t> counts, std::int64_t total,
                       double lambda, std::span<double> out);

// Scale of the posterior approximation for one entry: sqrt(mu(1-mu) t / n_eff).
double posterior_sigma(double mu, std::int64_t n_eff, double temperature);

// One draw from Normal(mu, posterior_sigma^2) restricted to [0,1]. mu is the
// (smoothed) point estimate of the entry, n_eff the number of conditioning
// observations (>= 1).
double sample_truncated_parameter(double mu, std::int64_t n_eff,
                                  double temperature, rng::Engine& eng);

// One committee member's version of the whole parameter group: independent
// truncated draws around the smoothed estimate, renormalized. N == 0 falls
// back to the uniform estimate with n_eff = 1 (a maximally uncertain group).
ProbabilityVector sample_multinomial(const EventCounts& ec,
                                     const SamplingConfig& cfg,
                                     rng::Engine& eng);
void sample_multinomial(std::span<const std::int64_t> counts, std::int64_t total,
                        const SamplingConfig& cfg, rng::Engine& eng,
                        std::span<double> out);

}  // namespace qbc
