// Committees of sampled models and their disagreement measures.
//
// A committee classifies an example by letting each of its k members vote;
// per-slot disagreement is the vote entropy normalized by log min(k, |C|),
// so 0 means unanimity and 1 a maximally split vote. Multi-word examples
// average the per-word values.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qbc/ccf.hpp"
#include "qbc/hmm.hpp"
#include "qbc/posterior.hpp"

namespace qbc {

struct VoteTally {
  std::vector<std::int32_t> votes;  // per class id
  std::int32_t total() const;
};

// -1/log(min(k,|C|)) * sum_c (V(c)/k) log(V(c)/k), with 0 log 0 = 0.
// Requires at least two votes and class_count >= votes.size() >= 2.
// Summation runs over the sorted tally, so the value is bit-identical under
// any permutation of class labels.
double normalized_vote_entropy(const VoteTally& tally, int class_count);

// Mean per-word disagreement of a segment. The masked overload can restrict
// the average to ambiguous positions; by default every position counts.
double sequence_disagreement(std::span<const double> per_word);
double sequence_disagreement(std::span<const double> per_word,
                             std::span<const char> ambiguous, bool ambiguous_only);

// Per-slot tallies of k member classifications (member_classes[m][slot]).
std::vector<VoteTally> tally_votes(std::span<const std::vector<int>> member_classes,
                                   int class_count);

// D(e): mean per-slot normalized vote entropy of the member classifications.
double committee_disagreement(std::span<const std::vector<int>> member_classes,
                              int class_count, std::span<const char> ambiguous,
                              bool ambiguous_only);

// --- coin-flipper committees ---------------------------------------------

struct CcfCommittee {
  std::vector<CcfModel> members;
};

// k >= 2 members; each member is one truncated-normal draw per color around
// the smoothed heads estimate.
CcfCommittee build_committee(const CcfStats& stats, int k,
                             const SamplingConfig& cfg, rng::Engine& eng);

// Tally over {tails, heads} for one color.
VoteTally vote(const CcfCommittee& committee, int color);

// Mean over members of the entropy of (a, 1-a), normalized by log 2.
double avg_class_distribution_entropy(const CcfCommittee& committee, int color);

// --- tagger committees -----------------------------------------------------

struct HmmCommittee {
  std::vector<HmmModel> members;
};

HmmCommittee build_committee(const HmmCounts& counts, int k,
                             const SamplingConfig& cfg, rng::Engine& eng);

// One tally per segment word; classes are tag ids.
std::vector<VoteTally> vote(const HmmCommittee& committee, const Segment& segment);

}  // namespace qbc
