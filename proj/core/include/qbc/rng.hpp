// Deterministic random-variate utilities shared by every sampler in the library.
// All randomness flows through an explicitly passed Engine so that seeded runs
// replay byte-identically; variates are generated from raw engine words rather
// than std <random> distributions, whose output is implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qbc::rng {

using Engine = std::mt19937_64;

// Engine for (seed, stream). Distinct streams decorrelate the independent
// random consumers of one run (corpus shuffle, committee draws, flip stream,
// ...) so that adding draws to one consumer does not shift the others.
Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform on [0, 1).
double uniform01(Engine& eng);

// Uniform on {0, ..., n-1}, unbiased. n must be positive.
std::uint64_t below(Engine& eng, std::uint64_t n);

// Standard normal via the polar method (no cached second variate, so the
// engine state alone determines the next value).
double normal01(Engine& eng);

// Normal(mu, sigma) conditioned on [lo, hi]. Resamples up to max_rejects
// times, then falls back to the bound nearest mu.
double truncated_normal(double mu, double sigma, double lo, double hi,
                        Engine& eng, int max_rejects = 1000);

template <class T>
void shuffle(std::vector<T>& items, Engine& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(below(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace qbc::rng
