#include "qbc/committee.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbc {

std::int32_t VoteTally::total() const {
  std::int32_t n = 0;
  for (const auto v : votes) n += v;
  return n;
}

double normalized_vote_entropy(const VoteTally& tally, int class_count) {
  if (class_count < 2) throw std::invalid_argument("normalized_vote_entropy: need at least two classes");
  if (static_cast<int>(tally.votes.size()) > class_count)
    throw std::invalid_argument("normalized_vote_entropy: tally wider than class count");
  const std::int32_t k = tally.total();
  if (k < 2) throw std::invalid_argument("normalized_vote_entropy: need at least two votes");

  std::vector<std::int32_t> sorted = tally.votes;
  std::sort(sorted.begin(), sorted.end());
  const double kd = static_cast<double>(k);
  double h = 0.0;
  for (const auto v : sorted) {
    if (v < 0) throw std::invalid_argument("normalized_vote_entropy: negative vote count");
    if (v == 0) continue;  // 0 log 0 = 0
    const double p = static_cast<double>(v) / kd;
    h -= p * std::log(p);
  }
  const double norm = std::log(static_cast<double>(std::min<std::int64_t>(k, class_count)));
  const double d = h / norm;
  return std::clamp(d, 0.0, 1.0);
}

double sequence_disagreement(std::span<const double> per_word) {
  if (per_word.empty()) throw std::invalid_argument("sequence_disagreement: empty sequence");
  double sum = 0.0;
  for (const double d : per_word) sum += d;
  return sum / static_cast<double>(per_word.size());
}

double sequence_disagreement(std::span<const double> per_word,
                             std::span<const char> ambiguous, bool ambiguous_only) {
  if (!ambiguous_only) return sequence_disagreement(per_word);
  if (per_word.size() != ambiguous.size())
    throw std::invalid_argument("sequence_disagreement: mask size mismatch");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < per_word.size(); ++i) {
    if (!ambiguous[i]) continue;
    sum += per_word[i];
    ++n;
  }
  if (n == 0) return 0.0;  // nothing ambiguous, nothing to disagree on
  return sum / static_cast<double>(n);
}

std::vector<VoteTally> tally_votes(std::span<const std::vector<int>> member_classes,
                                   int class_count) {
  if (member_classes.size() < 2) throw std::invalid_argument("tally_votes: need at least two members");
  const std::size_t slots = member_classes.front().size();
  std::vector<VoteTally> tallies(slots);
  for (auto& t : tallies) t.votes.assign(static_cast<std::size_t>(class_count), 0);
  for (const auto& classes : member_classes) {
    if (classes.size() != slots) throw std::invalid_argument("tally_votes: ragged member classifications");
    for (std::size_t s = 0; s < slots; ++s) {
      const int c = classes[s];
      if (c < 0 || c >= class_count) throw std::invalid_argument("tally_votes: class id out of range");
      tallies[s].votes[static_cast<std::size_t>(c)] += 1;
    }
  }
  return tallies;
}

double committee_disagreement(std::span<const std::vector<int>> member_classes,
                              int class_count, std::span<const char> ambiguous,
                              bool ambiguous_only) {
  const auto tallies = tally_votes(member_classes, class_count);
  std::vector<double> per_slot(tallies.size());
  for (std::size_t s = 0; s < tallies.size(); ++s)
    per_slot[s] = normalized_vote_entropy(tallies[s], class_count);
  return sequence_disagreement(per_slot, ambiguous, ambiguous_only);
}

CcfCommittee build_committee(const CcfStats& stats, int k,
                             const SamplingConfig& cfg, rng::Engine& eng) {
  if (k < 2) throw std::invalid_argument("build_committee: need at least two members");
  validate(cfg);
  CcfCommittee committee;
  committee.members.resize(static_cast<std::size_t>(k));
  for (auto& member : committee.members) {
    member.heads_estimate.resize(static_cast<std::size_t>(stats.color_count()));
    double pair[2];
    for (int c = 0; c < stats.color_count(); ++c) {
      const auto& ec = stats.colors[static_cast<std::size_t>(c)];
      smoothed_estimate(ec.counts, ec.total, cfg.smoothing, pair);
      member.heads_estimate[static_cast<std::size_t>(c)] = sample_truncated_parameter(
          pair[0], std::max<std::int64_t>(ec.total, 1), cfg.temperature, eng);
    }
  }
  return committee;
}

VoteTally vote(const CcfCommittee& committee, int color) {
  if (committee.members.size() < 2) throw std::invalid_argument("vote: need at least two members");
  VoteTally tally;
  tally.votes.assign(2, 0);
  for (const auto& member : committee.members)
    tally.votes[static_cast<std::size_t>(classify(member, color))] += 1;
  return tally;
}

double avg_class_distribution_entropy(const CcfCommittee& committee, int color) {
  if (committee.members.empty()) throw std::invalid_argument("avg_class_distribution_entropy: empty committee");
  double sum = 0.0;
  for (const auto& member : committee.members) {
    if (color < 0 || color >= static_cast<int>(member.heads_estimate.size()))
      throw std::invalid_argument("avg_class_distribution_entropy: color out of range");
    const double a = member.heads_estimate[static_cast<std::size_t>(color)];
    double h = 0.0;
    if (a > 0.0) h -= a * std::log(a);
    if (a < 1.0) h -= (1.0 - a) * std::log(1.0 - a);
    sum += h / std::log(2.0);
  }
  return sum / static_cast<double>(committee.members.size());
}

HmmCommittee build_committee(const HmmCounts& counts, int k,
                             const SamplingConfig& cfg, rng::Engine& eng) {
  if (k < 2) throw std::invalid_argument("build_committee: need at least two members");
  HmmCommittee committee;
  committee.members.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) committee.members.push_back(sample_model(counts, cfg, eng));
  return committee;
}

std::vector<VoteTally> vote(const HmmCommittee& committee, const Segment& segment) {
  if (committee.members.size() < 2) throw std::invalid_argument("vote: need at least two members");
  const int class_count = committee.members.front().lexicon->tag_count();
  std::vector<std::vector<int>> classes;
  classes.reserve(committee.members.size());
  for (const auto& member : committee.members) {
    const auto decoded = viterbi(member, segment).tags;
    classes.emplace_back(decoded.begin(), decoded.end());
  }
  return tally_votes(classes, class_count);
}

}  // namespace qbc
