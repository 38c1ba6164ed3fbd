// Bigram HMM tagger over a closed lexicon.
//
// Parameters come in three groups: tag probabilities P(t), transition rows
// P(t2 | t1) (one row per conditioning tag, plus one for the sentence-start
// context), and per-word lexical rows P(t | w) over the word's allowed tags.
// Output probabilities are recovered through Bayes' rule, so a tag path is
// scored by sum of log P(t_{i-1} -> t_i) + log P(t_i | w_i) - log P(t_i);
// the constant word terms drop out of every comparison.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qbc/lexicon.hpp"
#include "qbc/posterior.hpp"
#include "qbc/rng.hpp"

namespace qbc {

// Sufficient statistics for every parameter group, stored flat: transitions
// as a (T+1) x T row-major table whose last row is the start context, lexical
// counts parallel to the lexicon's flattened allowed-tag table.
struct HmmCounts {
  const Lexicon* lexicon = nullptr;
  std::vector<std::int64_t> tag_counts;
  std::int64_t tag_total = 0;
  std::vector<std::int64_t> transition_counts;
  std::vector<std::int64_t> transition_totals;
  std::vector<std::int64_t> lexical_counts;
  std::vector<std::int64_t> lexical_totals;

  HmmCounts() = default;
  explicit HmmCounts(const Lexicon& lex);

  std::span<const std::int64_t> transition_row(TagId context) const;
  std::span<const std::int64_t> lexical_row(WordId w) const;
  bool operator==(const HmmCounts&) const = default;
};

// Labeled segment: tag/transition/lexical counts for every segment word, the
// transition out of the left anchor, and the transition into the right anchor
// when there is one. Anchor words themselves contribute nothing (their tags
// are lexicon knowledge, not annotation).
void update_counts(HmmCounts& counts, const Segment& segment,
                   std::span<const TagId> gold);

// Fully labeled sentence (initial training): every position and every
// adjacent transition, starting from the sentence-start context.
void update_counts(HmmCounts& counts, const Sentence& sentence);

// A concrete parameter assignment. Rows are probability vectors; lexical rows
// are positive only on lexicon-allowed tags.
struct HmmModel {
  const Lexicon* lexicon = nullptr;
  std::vector<double> tag_prob;    // unsmoothed MLE, never sampled
  std::vector<double> transition;  // (T+1) x T row-major
  std::vector<double> lexical;     // parallel to the lexicon's allowed table

  std::span<const double> transition_row(TagId context) const;
  std::span<const double> lexical_row(WordId w) const;
};

// Point model: smoothed transition and lexical rows, MLE tag probabilities.
// Requires every tag to have been observed (guaranteed once initial training
// covers the tag set); throws DataError otherwise.
HmmModel mle_model(const HmmCounts& counts, double lambda);

// One committee member: every transition and lexical row drawn independently
// via sample_multinomial; tag probabilities stay at the MLE.
HmmModel sample_model(const HmmCounts& counts, const SamplingConfig& cfg,
                      rng::Engine& eng);

// Committee member restricted to the parameter rows a decode of `segment`
// can touch (its words' lexical rows and the transition rows out of the left
// anchor and of every allowed tag); untouched rows stay zero. The member's
// vote on that segment is distributed exactly as under sample_model, at a
// small fraction of the draws.
HmmModel sample_segment_model(const HmmCounts& counts, const Segment& segment,
                              const SamplingConfig& cfg, rng::Engine& eng);

struct ViterbiResult {
  std::vector<TagId> tags;
  double log_score = 0.0;
};

// Best lexicon-consistent tag path for the segment, scored from the left
// anchor and including the transition into the right anchor when present.
// Ties break toward the lowest tag id at every decision.
ViterbiResult viterbi(const HmmModel& model, const Segment& segment);

// Total score mass over all lexicon-consistent paths (same per-path terms as
// viterbi, summed). Dynamic-programming oracle for the decoder.
double sequence_probability(const HmmModel& model, const Segment& segment);

}  // namespace qbc
