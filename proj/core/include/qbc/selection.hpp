// Selective-sampling protocols driven by committee disagreement.
//
// Every protocol examines a stream of unlabeled examples and decides, per
// example, whether to pay for its label: two_member asks whether two sampled
// models disagree at all; thresholded and randomized turn the k-member vote
// entropy into a decision; batch scores a block of N examples against frozen
// counts and labels the top m. "complete" labels everything and provides the
// baseline curve through the same machinery.
//
// The generic steps are templated over a backend that knows how to sample a
// member classification, apply a label to its counts, and price a label.
// Labels are obtained exclusively through the oracle callback, which fires
// only after a positive decision.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "qbc/committee.hpp"

namespace qbc {

enum class Protocol { two_member, thresholded, randomized, batch, complete };

const char* protocol_name(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view name);

struct SelectionConfig {
  Protocol protocol = Protocol::two_member;
  int committee_size = 2;      // k
  double temperature = 1.0;    // t
  double smoothing = 0.05;     // lambda
  double threshold = 0.0;      // theta, thresholded only
  double gain = 1.0;           // g, randomized only
  int batch_size = 500;        // N, batch only
  int batch_quota = 5;         // m, batch only
  bool avg_ambiguous_only = false;

  SamplingConfig sampling() const { return {temperature, smoothing}; }
};

void validate(const SelectionConfig& cfg);

struct LabelCost {
  std::int64_t ambiguous = 0;
  std::int64_t total = 0;
};

struct SelectionTallies {
  std::int64_t examined = 0;
  std::int64_t selected = 0;
  std::int64_t labeled_ambiguous = 0;
  std::int64_t labeled_total = 0;

  bool operator==(const SelectionTallies&) const = default;
};

// Ring of the most recent examine decisions; reports the fraction selected.
class SelectionWindow {
 public:
  explicit SelectionWindow(int capacity = 500);
  void push(bool selected);
  double frequency() const;
  int capacity() const { return capacity_; }

 private:
  std::vector<char> ring_;
  int capacity_;
  std::int64_t seen_ = 0;
  std::int64_t selected_in_ring_ = 0;
};

template <class Backend>
struct LearnerState {
  typename Backend::Counts counts;
  SelectionTallies tallies;
  SelectionWindow window{500};
};

// --- decision probes (no state change) -------------------------------------

template <class Backend>
bool two_member_disagree(const Backend& b, const typename Backend::Counts& counts,
                         const typename Backend::Example& example, rng::Engine& eng) {
  const auto first = b.classify_member(counts, example, eng);
  const auto second = b.classify_member(counts, example, eng);
  return first != second;
}

template <class Backend>
double disagreement_probe(const Backend& b, const typename Backend::Counts& counts,
                          const typename Backend::Example& example, int k,
                          bool ambiguous_only, rng::Engine& eng) {
  std::vector<std::vector<int>> classes;
  classes.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) classes.push_back(b.classify_member(counts, example, eng));
  const auto mask = b.ambiguous_mask(example);
  return committee_disagreement(classes, b.class_count(), mask, ambiguous_only);
}

// --- protocol steps ---------------------------------------------------------

template <class Backend, class Oracle>
bool apply_decision(const Backend& b, LearnerState<Backend>& state,
                    const typename Backend::Example& example, bool selected,
                    Oracle&& oracle) {
  state.tallies.examined += 1;
  state.window.push(selected);
  if (selected) {
    state.tallies.selected += 1;
    const auto label = oracle(example);
    b.apply_label(state.counts, example, label);
    const LabelCost cost = b.label_cost(example, label);
    state.tallies.labeled_ambiguous += cost.ambiguous;
    state.tallies.labeled_total += cost.total;
  }
  return selected;
}

template <class Backend, class Oracle>
bool two_member_step(const Backend& b, LearnerState<Backend>& state,
                     const typename Backend::Example& example, Oracle&& oracle,
                     rng::Engine& eng) {
  return apply_decision(b, state, example, two_member_disagree(b, state.counts, example, eng),
                        std::forward<Oracle>(oracle));
}

// Thresholded (select iff D > theta) and randomized (select with probability
// min(1, g*D)) share the committee evaluation.
template <class Backend, class Oracle>
bool sequential_step(const Backend& b, LearnerState<Backend>& state,
                     const typename Backend::Example& example,
                     const SelectionConfig& cfg, Oracle&& oracle, rng::Engine& eng) {
  const double d = disagreement_probe(b, state.counts, example, cfg.committee_size,
                                      cfg.avg_ambiguous_only, eng);
  bool selected = false;
  switch (cfg.protocol) {
    case Protocol::thresholded:
      selected = d > cfg.threshold;
      break;
    case Protocol::randomized:
      selected = rng::uniform01(eng) < std::min(1.0, cfg.gain * d);
      break;
    default:
      throw std::invalid_argument("sequential_step: protocol is not thresholded/randomized");
  }
  return apply_decision(b, state, example, selected, std::forward<Oracle>(oracle));
}

template <class Backend, class Oracle>
bool complete_step(const Backend& b, LearnerState<Backend>& state,
                   const typename Backend::Example& example, Oracle&& oracle) {
  return apply_decision(b, state, example, true, std::forward<Oracle>(oracle));
}

// Scores the whole batch against the counts as they stand, then labels the
// top `batch_quota` examples (score ties resolve toward the earlier stream
// position). Count updates land after scoring, in stream order. Returns the
// selected in-batch indices, ascending.
template <class Backend, class Oracle>
std::vector<std::size_t> batch_round(const Backend& b, LearnerState<Backend>& state,
                                     std::span<const typename Backend::Example> batch,
                                     const SelectionConfig& cfg, Oracle&& oracle,
                                     rng::Engine& eng) {
  if (batch.empty()) return {};
  std::vector<double> score(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    score[i] = disagreement_probe(b, state.counts, batch[i], cfg.committee_size,
                                  cfg.avg_ambiguous_only, eng);
  std::vector<std::size_t> order(batch.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    if (score[a] != score[c]) return score[a] > score[c];
    return a < c;
  });
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_quota),
                                              batch.size());
  std::vector<std::size_t> selected(order.begin(), order.begin() + m);
  std::sort(selected.begin(), selected.end());

  std::size_t next = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const bool take = next < selected.size() && selected[next] == i;
    state.tallies.examined += 1;
    state.window.push(take);
    if (take) ++next;
  }
  for (const std::size_t i : selected) {
    state.tallies.selected += 1;
    const auto label = oracle(batch[i]);
    b.apply_label(state.counts, batch[i], label);
    const LabelCost cost = b.label_cost(batch[i], label);
    state.tallies.labeled_ambiguous += cost.ambiguous;
    state.tallies.labeled_total += cost.total;
  }
  return selected;
}

// --- backends ----------------------------------------------------------------

struct CcfExample {
  int color = 0;
  std::int64_t stream_index = -1;
};

struct CcfBackend {
  using Counts = CcfStats;
  using Example = CcfExample;
  using Label = Flip;

  SamplingConfig sampling;

  int class_count() const { return 2; }
  std::vector<char> ambiguous_mask(const Example&) const { return {1}; }

  // A member's view of one color is a single truncated draw around the
  // smoothed heads estimate; independence across colors makes the full-model
  // draw unnecessary for a one-color decision.
  std::vector<int> classify_member(const CcfStats& stats, const Example& e,
                                   rng::Engine& eng) const;

  void apply_label(CcfStats& stats, const Example& e, const Flip& outcome) const;
  LabelCost label_cost(const Example&, const Flip&) const { return {0, 1}; }
};

struct HmmExample {
  Segment segment;
  std::int64_t stream_index = -1;
};

struct HmmBackend {
  using Counts = HmmCounts;
  using Example = HmmExample;
  using Label = std::vector<TagId>;

  SamplingConfig sampling;

  int class_count() const { return class_count_; }
  void bind(const Lexicon& lex) { class_count_ = lex.tag_count(); }

  std::vector<char> ambiguous_mask(const Example& e) const {
    // Segment words are ambiguous by construction.
    return std::vector<char>(e.segment.words.size(), 1);
  }

  std::vector<int> classify_member(const HmmCounts& counts, const Example& e,
                                   rng::Engine& eng) const;

  void apply_label(HmmCounts& counts, const Example& e, const Label& gold) const;
  LabelCost label_cost(const Example& e, const Label&) const {
    const auto n = static_cast<std::int64_t>(e.segment.words.size());
    return {n, n};
  }

 private:
  int class_count_ = 0;
};

}  // namespace qbc
