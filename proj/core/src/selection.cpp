#include "qbc/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace qbc {

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::two_member: return "two_member";
    case Protocol::thresholded: return "thresholded";
    case Protocol::randomized: return "randomized";
    case Protocol::batch: return "batch";
    case Protocol::complete: return "complete";
  }
  throw std::logic_error("protocol_name: unknown protocol");
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  for (const Protocol p : {Protocol::two_member, Protocol::thresholded,
                           Protocol::randomized, Protocol::batch, Protocol::complete}) {
    if (name == protocol_name(p)) return p;
  }
  return std::nullopt;
}

void validate(const SelectionConfig& cfg) {
  validate(cfg.sampling());
  switch (cfg.protocol) {
    case Protocol::two_member:
      if (cfg.committee_size != 2)
        throw std::invalid_argument("two_member uses exactly two committee members");
      break;
    case Protocol::thresholded:
      if (cfg.committee_size < 2)
        throw std::invalid_argument("committee size must be at least 2");
      if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0))
        throw std::invalid_argument("threshold must lie in [0,1]");
      break;
    case Protocol::randomized:
      if (cfg.committee_size < 2)
        throw std::invalid_argument("committee size must be at least 2");
      if (!(cfg.gain >= 0.0))
        throw std::invalid_argument("gain must be nonnegative");
      break;
    case Protocol::batch:
      if (cfg.committee_size < 2)
        throw std::invalid_argument("committee size must be at least 2");
      if (cfg.batch_size < 1) throw std::invalid_argument("batch size must be positive");
      if (cfg.batch_quota < 1 || cfg.batch_quota > cfg.batch_size)
        throw std::invalid_argument("batch quota must lie in [1, batch size]");
      break;
    case Protocol::complete:
      break;
  }
}

SelectionWindow::SelectionWindow(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("SelectionWindow: capacity must be positive");
  ring_.assign(static_cast<std::size_t>(capacity), 0);
}

void SelectionWindow::push(bool selected) {
  const auto slot = static_cast<std::size_t>(seen_ % capacity_);
  if (seen_ >= capacity_) selected_in_ring_ -= ring_[slot];
  ring_[slot] = selected ? 1 : 0;
  selected_in_ring_ += ring_[slot];
  seen_ += 1;
}

double SelectionWindow::frequency() const {
  const std::int64_t n = std::min<std::int64_t>(seen_, capacity_);
  if (n == 0) return 0.0;
  return static_cast<double>(selected_in_ring_) / static_cast<double>(n);
}

std::vector<int> CcfBackend::classify_member(const CcfStats& stats, const Example& e,
                                             rng::Engine& eng) const {
  if (e.color < 0 || e.color >= stats.color_count())
    throw std::invalid_argument("classify_member: color out of range");
  const auto& ec = stats.colors[static_cast<std::size_t>(e.color)];
  double pair[2];
  smoothed_estimate(ec.counts, ec.total, sampling.smoothing, pair);
  const double a = sample_truncated_parameter(
      pair[0], std::max<std::int64_t>(ec.total, 1), sampling.temperature, eng);
  return {a > 0.5 ? static_cast<int>(Flip::heads) : static_cast<int>(Flip::tails)};
}

void CcfBackend::apply_label(CcfStats& stats, const Example& e, const Flip& outcome) const {
  stats.add_flip(e.color, outcome);
}

std::vector<int> HmmBackend::classify_member(const HmmCounts& counts, const Example& e,
                                             rng::Engine& eng) const {
  const HmmModel member = sample_segment_model(counts, e.segment, sampling, eng);
  const auto tags = viterbi(member, e.segment).tags;
  return std::vector<int>(tags.begin(), tags.end());
}

void HmmBackend::apply_label(HmmCounts& counts, const Example& e, const Label& gold) const {
  update_counts(counts, e.segment, gold);
}

}  // namespace qbc
