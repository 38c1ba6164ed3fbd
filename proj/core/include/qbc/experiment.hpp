// Seeded end-to-end selective-sampling runs and their learning-curve output.
//
// A run owns all of its randomness through fixed engine streams keyed by the
// run seed, so identical configurations replay byte-identically. Progress
// rows are emitted on an examination-count schedule and carry what the
// learning curves need: label costs, accuracy against a test set (or the
// generating world), model size, and the recent selection frequency.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qbc/ccf.hpp"
#include "qbc/selection.hpp"

namespace qbc {

// Engine streams, one per independent random consumer of a run. Seed plus
// stream fully determines a consumer's variates, so adding draws to one
// consumer never shifts another.
namespace streams {
inline constexpr std::uint64_t shuffle = 1;
inline constexpr std::uint64_t committee = 2;
inline constexpr std::uint64_t flips = 3;
inline constexpr std::uint64_t world = 4;
inline constexpr std::uint64_t diagnostics = 5;
}  // namespace streams

// When to emit a progress row, as thresholds on the examined counter:
// either every N examinations or at an explicit ascending list of counts.
// An empty schedule emits no rows. At most one row per protocol step; a
// final row records the end state when anything was scheduled at all.
struct ScheduleSpec {
  std::int64_t every = 0;
  std::vector<std::int64_t> points;

  bool empty() const { return every <= 0 && points.empty(); }
};

// "every:N" | "c1,c2,..." | "". Throws std::invalid_argument on anything else.
ScheduleSpec parse_schedule(const std::string& text);

struct CcfCurveRecord {
  std::int64_t examined = 0;
  std::int64_t selected = 0;
  std::int64_t labeled_total = 0;
  double expected_acc = 0.0;
  double ptm_acc = 0.0;
  double sel_freq_window = 0.0;

  bool operator==(const CcfCurveRecord&) const = default;
};

struct TaggerCurveRecord {
  std::int64_t examined = 0;
  std::int64_t selected = 0;
  std::int64_t labeled_ambiguous = 0;
  std::int64_t labeled_total = 0;
  double acc_ambiguous = 0.0;
  double acc_all = 0.0;
  std::int64_t lexical_nonzero = 0;
  std::int64_t bigram_nonzero = 0;
  double sel_freq_window = 0.0;
  bool amb_defined = false;

  bool operator==(const TaggerCurveRecord&) const = default;
};

// --- coin-flipper runs -------------------------------------------------------

struct CcfRunConfig {
  SelectionConfig selection;
  ScheduleSpec schedule;
  std::uint64_t seed = 0;
  std::int64_t initial_flips = 50;   // labeled trials before selection starts
  std::int64_t examine_budget = 5000;
};

struct CcfRunResult {
  std::vector<CcfCurveRecord> records;
  CcfStats stats{0};
  SelectionTallies tallies;
};

CcfRunResult run_ccf(const CcfWorld& world, const CcfRunConfig& cfg);

// --- tagger runs -------------------------------------------------------------

struct TaggerRunConfig {
  SelectionConfig selection;
  ScheduleSpec schedule;
  std::uint64_t seed = 0;
  std::int64_t initial_words = 1000;  // fully labeled sentence prefix, by word count
  std::int64_t examine_budget = -1;   // segments to examine; -1 = one pass
  bool shuffle_sentences = true;
};

struct TaggerRunResult {
  std::vector<TaggerCurveRecord> records;
  HmmCounts counts;
  SelectionTallies tallies;
  std::int64_t initial_sentences = 0;
  std::int64_t initial_labeled_words = 0;
  std::int64_t stream_segments = 0;  // distinct segments in the selection stream
};

TaggerRunResult run_tagger(const Lexicon& lexicon, const TaggedCorpus& train,
                           const TaggedCorpus& test, const TaggerRunConfig& cfg);

// --- evaluation --------------------------------------------------------------

struct AccuracyReport {
  std::int64_t ambiguous_correct = 0;
  std::int64_t ambiguous_total = 0;
  std::int64_t correct = 0;
  std::int64_t total = 0;

  bool ambiguous_defined() const { return ambiguous_total > 0; }
  double ambiguous_accuracy() const;
  double overall_accuracy() const;
};

// Segment-by-segment Viterbi decode of the test corpus. Unambiguous words
// are correct by definition of the closed lexicon.
AccuracyReport evaluate_accuracy(const HmmModel& model, const TaggedCorpus& test);

struct ModelSize {
  std::int64_t lexical_nonzero = 0;
  std::int64_t bigram_nonzero = 0;
};

// Distinct (word, tag) and (context, tag) events observed so far.
ModelSize count_model_size(const HmmCounts& counts);

// Mean committee vote entropy over ambiguous test words, split by whether the
// point model tags them correctly. A committee is drawn afresh per segment,
// mirroring what selection would see.
struct EntropyByCorrectness {
  double correct_mean = 0.0;
  double incorrect_mean = 0.0;
  std::int64_t correct_count = 0;
  std::int64_t incorrect_count = 0;
};

EntropyByCorrectness vote_entropy_by_correctness(const HmmCounts& counts,
                                                 const TaggedCorpus& test, int k,
                                                 const SamplingConfig& cfg,
                                                 rng::Engine& eng);

// --- output ------------------------------------------------------------------

// Header + one row per record; doubles as %.6f, flags as 0/1.
void write_csv(const std::string& path, std::span<const CcfCurveRecord> records);
void write_csv(const std::string& path, std::span<const TaggerCurveRecord> records);

// "dir/curve.csv" -> "dir/curve.baseline.csv" (no extension: append).
std::string baseline_path(const std::string& out_path);

}  // namespace qbc
