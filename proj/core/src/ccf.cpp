#include "qbc/ccf.hpp"

#include <algorithm>
#include <stdexcept>

namespace qbc {

CcfStats::CcfStats(int color_count) {
  if (color_count < 0) throw std::invalid_argument("CcfStats: negative color count");
  colors.assign(static_cast<std::size_t>(color_count),
                EventCounts{{0, 0}, 0});
}

void CcfStats::add_flip(int color, Flip outcome) {
  if (color < 0 || color >= color_count())
    throw std::invalid_argument("CcfStats::add_flip: color out of range");
  colors[static_cast<std::size_t>(color)].add(outcome == Flip::heads ? 0 : 1);
}

Flip classify(const CcfModel& model, int color) {
  if (color < 0 || color >= static_cast<int>(model.heads_estimate.size()))
    throw std::invalid_argument("classify: color out of range");
  return model.heads_estimate[static_cast<std::size_t>(color)] > 0.5 ? Flip::heads
                                                                     : Flip::tails;
}

std::pair<int, Flip> draw_flip(const CcfWorld& world, rng::Engine& eng) {
  if (world.color_count() == 0) throw std::invalid_argument("draw_flip: empty world");
  const double u = rng::uniform01(eng);
  double cum = 0.0;
  int color = world.color_count() - 1;
  for (int c = 0; c < world.color_count(); ++c) {
    cum += world.occurrence[static_cast<std::size_t>(c)];
    if (u < cum) {
      color = c;
      break;
    }
  }
  const bool heads =
      rng::uniform01(eng) < world.heads_prob[static_cast<std::size_t>(color)];
  return {color, heads ? Flip::heads : Flip::tails};
}

double expected_accuracy(const CcfModel& model, const CcfWorld& world) {
  if (static_cast<int>(model.heads_estimate.size()) < world.color_count())
    throw std::invalid_argument("expected_accuracy: model does not cover all colors");
  double acc = 0.0;
  for (int c = 0; c < world.color_count(); ++c) {
    const double h = world.heads_prob[static_cast<std::size_t>(c)];
    const double hit = classify(model, c) == Flip::heads ? h : 1.0 - h;
    acc += world.occurrence[static_cast<std::size_t>(c)] * hit;
  }
  return acc;
}

double ptm_accuracy(const CcfWorld& world) {
  double acc = 0.0;
  for (int c = 0; c < world.color_count(); ++c) {
    const double h = world.heads_prob[static_cast<std::size_t>(c)];
    acc += world.occurrence[static_cast<std::size_t>(c)] * std::max(h, 1.0 - h);
  }
  return acc;
}

CcfModel estimate_model(const CcfStats& stats, double lambda) {
  CcfModel model;
  model.heads_estimate.resize(static_cast<std::size_t>(stats.color_count()));
  double pair[2];
  for (int c = 0; c < stats.color_count(); ++c) {
    const auto& ec = stats.colors[static_cast<std::size_t>(c)];
    smoothed_estimate(ec.counts, ec.total, lambda, pair);
    model.heads_estimate[static_cast<std::size_t>(c)] = pair[0];
  }
  return model;
}

CcfWorld random_world(int color_count, rng::Engine& eng) {
  if (color_count <= 0) throw std::invalid_argument("random_world: need at least one color");
  CcfWorld world;
  world.occurrence.resize(static_cast<std::size_t>(color_count));
  double sum = 0.0;
  for (auto& p : world.occurrence) {
    p = 1.0 - rng::uniform01(eng);  // (0, 1], keeps every color reachable
    sum += p;
  }
  for (auto& p : world.occurrence) p /= sum;
  world.heads_prob.resize(static_cast<std::size_t>(color_count));
  for (auto& h : world.heads_prob) h = rng::uniform01(eng);
  return world;
}

}  // namespace qbc
