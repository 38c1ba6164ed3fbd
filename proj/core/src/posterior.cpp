#include "qbc/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qbc {

EventCounts EventCounts::of(std::vector<std::int64_t> counts) {
  EventCounts ec;
  ec.total = 0;
  for (const auto c : counts) {
    if (c < 0) throw std::invalid_argument("EventCounts: negative count");
    ec.total += c;
  }
  ec.counts = std::move(counts);
  return ec;
}

void EventCounts::add(std::size_t value, std::int64_t n) {
  if (value >= counts.size()) throw std::invalid_argument("EventCounts::add: value out of range");
  if (counts[value] + n < 0) throw std::invalid_argument("EventCounts::add: count would go negative");
  counts[value] += n;
  total += n;
}

void validate(const SamplingConfig& cfg) {
  if (!(cfg.temperature > 0.0))
    throw std::invalid_argument("SamplingConfig: temperature must be positive");
  if (!(cfg.smoothing >= 0.0 && cfg.smoothing < 1.0))
    throw std::invalid_argument("SamplingConfig: smoothing must lie in [0,1)");
}

ProbabilityVector mle(const EventCounts& ec) {
  if (ec.counts.empty()) throw std::invalid_argument("mle: empty counts");
  if (ec.total <= 0) throw std::invalid_argument("mle: total count is zero");
  ProbabilityVector p(ec.counts.size());
  const double n = static_cast<double>(ec.total);
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = static_cast<double>(ec.counts[i]) / n;
  return p;
}

void smoothed_estimate(std::span<const std::int64_t> counts, std::int64_t total,
                       double lambda, std::span<double> out) {
  const std::size_t nu = counts.size();
  if (nu == 0) throw std::invalid_argument("smoothed_estimate: empty counts");
  if (out.size() != nu) throw std::invalid_argument("smoothed_estimate: output size mismatch");
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("smoothed_estimate: lambda must lie in [0,1)");
  if (total == 0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(nu));
    return;
  }
  const double keep = 1.0 - lambda;
  const double denom = keep * static_cast<double>(total) + lambda * static_cast<double>(nu);
  for (std::size_t i = 0; i < nu; ++i)
    out[i] = (keep * static_cast<double>(counts[i]) + lambda) / denom;
}

ProbabilityVector smoothed_estimate(const EventCounts& ec, double lambda) {
  ProbabilityVector p(ec.counts.size());
  smoothed_estimate(ec.counts, ec.total, lambda, p);
  return p;
}

double posterior_sigma(double mu, std::int64_t n_eff, double temperature) {
  if (n_eff < 1) throw std::invalid_argument("posterior_sigma: n_eff must be >= 1");
  if (!(temperature > 0.0)) throw std::invalid_argument("posterior_sigma: temperature must be positive");
  const double v = mu * (1.0 - mu) * temperature / static_cast<double>(n_eff);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

double sample_truncated_parameter(double mu, std::int64_t n_eff,
                                  double temperature, rng::Engine& eng) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("sample_truncated_parameter: mu outside [0,1]");
  return rng::truncated_normal(mu, posterior_sigma(mu, n_eff, temperature), 0.0, 1.0, eng);
}

void sample_multinomial(std::span<const std::int64_t> counts, std::int64_t total,
                        const SamplingConfig& cfg, rng::Engine& eng,
                        std::span<double> out) {
  validate(cfg);
  const std::size_t nu = counts.size();
  if (nu == 0) throw std::invalid_argument("sample_multinomial: empty counts");
  if (out.size() != nu) throw std::invalid_argument("sample_multinomial: output size mismatch");
  const std::int64_t n_eff = std::max<std::int64_t>(total, 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    smoothed_estimate(counts, total, cfg.smoothing, out);
    double sum = 0.0;
    for (std::size_t i = 0; i < nu; ++i) {
      out[i] = sample_truncated_parameter(out[i], n_eff, cfg.temperature, eng);
      sum += out[i];
    }
    if (sum > 0.0) {
      for (std::size_t i = 0; i < nu; ++i) out[i] /= sum;
      return;
    }
    // All entries hit zero (possible only in degenerate corners); redraw.
  }
  throw std::logic_error("sample_multinomial: could not draw a nonzero vector");
}

ProbabilityVector sample_multinomial(const EventCounts& ec,
                                     const SamplingConfig& cfg,
                                     rng::Engine& eng) {
  ProbabilityVector p(ec.counts.size());
  sample_multinomial(ec.counts, ec.total, cfg, eng, p);
  return p;
}

}  // namespace qbc
