// Colorful coin flipper: a bank of biased coins, one per color. Each trial
// picks a color by its occurrence probability and flips that coin; the
// learner must predict heads/tails per color. Serves as the minimal testbed
// for committee-based selection (one binomial parameter per color).
#pragma once

#include <cstdint>
#include <vector>

#include "qbc/posterior.hpp"
#include "qbc/rng.hpp"

namespace qbc {

enum class Flip : int { tails = 0, heads = 1 };

// Ground truth: occurrence distribution over colors and per-color heads
// probability.
struct CcfWorld {
  ProbabilityVector occurrence;
  std::vector<double> heads_prob;

  int color_count() const { return static_cast<int>(occurrence.size()); }
};

// Per-color flip counts. Index 0 of each group counts heads, index 1 tails.
struct CcfStats {
  std::vector<EventCounts> colors;

  explicit CcfStats(int color_count = 0);
  int color_count() const { return static_cast<int>(colors.size()); }
  void add_flip(int color, Flip outcome);
  bool operator==(const CcfStats&) const = default;
};

// A point model: estimated heads probability per color.
struct CcfModel {
  std::vector<double> heads_estimate;
};

// Predict heads iff the estimate exceeds 1/2 (exact tie -> tails).
Flip classify(const CcfModel& model, int color);

// Draw one trial: color by occurrence, outcome by that color's coin.
std::pair<int, Flip> draw_flip(const CcfWorld& world, rng::Engine& eng);

// Probability that `model`'s prediction matches the flip of a random trial.
double expected_accuracy(const CcfModel& model, const CcfWorld& world);

// Accuracy of the best model possible ("perfect theoretically attainable"):
// always call the likelier side.
double ptm_accuracy(const CcfWorld& world);

// Point model from counts; per color the smoothed heads estimate (0.5 for a
// color never seen).
CcfModel estimate_model(const CcfStats& stats, double lambda);

// World with occurrence = normalized independent uniform(0,1] draws and
// independent uniform heads probabilities. Occurrence entries are drawn
// first (all colors), then the coin biases.
CcfWorld random_world(int color_count, rng::Engine& eng);

}  // namespace qbc
