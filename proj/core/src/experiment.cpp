#include "qbc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "qbc/errors.hpp"

namespace qbc {
namespace {

std::int64_t parse_count(std::string_view text, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
    throw std::invalid_argument(std::string("schedule: bad ") + what + " '" +
                                std::string(text) + "'");
  return value;
}

// Walks a schedule against the monotone examined counter. due() reports
// whether any threshold was passed since the previous call.
class ScheduleCursor {
 public:
  explicit ScheduleCursor(const ScheduleSpec& spec) : spec_(spec) {}

  bool due(std::int64_t examined) {
    bool hit = false;
    if (spec_.every > 0 && examined / spec_.every > every_emitted_) {
      every_emitted_ = examined / spec_.every;
      hit = true;
    }
    while (next_ < spec_.points.size() && spec_.points[next_] <= examined) {
      ++next_;
      hit = true;
    }
    return hit;
  }

 private:
  const ScheduleSpec& spec_;
  std::int64_t every_emitted_ = 0;
  std::size_t next_ = 0;
};

}  // namespace

ScheduleSpec parse_schedule(const std::string& text) {
  ScheduleSpec spec;
  if (text.empty()) return spec;
  if (text.rfind("every:", 0) == 0) {
    spec.every = parse_count(std::string_view(text).substr(6), "interval");
    if (spec.every == 0) throw std::invalid_argument("schedule: every:N needs N >= 1");
    return spec;
  }
  std::string_view rest = text;
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    spec.points.push_back(parse_count(rest.substr(0, comma), "point"));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  std::sort(spec.points.begin(), spec.points.end());
  spec.points.erase(std::unique(spec.points.begin(), spec.points.end()), spec.points.end());
  return spec;
}

// --- coin-flipper runs -------------------------------------------------------

CcfRunResult run_ccf(const CcfWorld& world, const CcfRunConfig& cfg) {
  validate(cfg.selection);
  if (world.color_count() == 0 || world.heads_prob.size() != world.occurrence.size())
    throw std::invalid_argument("run_ccf: malformed world");
  if (cfg.initial_flips < 0 || cfg.examine_budget < 0)
    throw std::invalid_argument("run_ccf: negative initial_flips or examine_budget");

  rng::Engine flips_eng = rng::make_engine(cfg.seed, streams::flips);
  rng::Engine committee_eng = rng::make_engine(cfg.seed, streams::committee);

  const SelectionConfig& sel = cfg.selection;
  CcfBackend backend{sel.sampling()};
  LearnerState<CcfBackend> state;
  state.counts = CcfStats(world.color_count());

  for (std::int64_t i = 0; i < cfg.initial_flips; ++i) {
    const auto [color, outcome] = draw_flip(world, flips_eng);
    state.counts.add_flip(color, outcome);
  }

  CcfRunResult result;
  const double ptm = ptm_accuracy(world);
  std::int64_t last_emit = -1;
  auto emit = [&] {
    CcfCurveRecord r;
    r.examined = state.tallies.examined;
    r.selected = state.tallies.selected;
    r.labeled_total = state.tallies.labeled_total;
    const CcfModel model = estimate_model(state.counts, sel.smoothing);
    r.expected_acc = expected_accuracy(model, world);
    r.ptm_acc = ptm;
    r.sel_freq_window = state.window.frequency();
    result.records.push_back(r);
    last_emit = r.examined;
  };

  ScheduleCursor cursor(cfg.schedule);
  if (cursor.due(0)) emit();

  std::int64_t next_index = 0;
  while (state.tallies.examined < cfg.examine_budget) {
    if (sel.protocol == Protocol::batch) {
      const std::int64_t want =
          std::min<std::int64_t>(sel.batch_size, cfg.examine_budget - state.tallies.examined);
      const std::int64_t base = next_index;
      std::vector<CcfExample> round;
      std::vector<Flip> outcomes;
      round.reserve(static_cast<std::size_t>(want));
      outcomes.reserve(static_cast<std::size_t>(want));
      for (std::int64_t i = 0; i < want; ++i) {
        const auto [color, outcome] = draw_flip(world, flips_eng);
        round.push_back({color, next_index++});
        outcomes.push_back(outcome);
      }
      batch_round(
          backend, state, std::span<const CcfExample>(round), sel,
          [&](const CcfExample& e) {
            return outcomes[static_cast<std::size_t>(e.stream_index - base)];
          },
          committee_eng);
    } else {
      const auto [color, outcome] = draw_flip(world, flips_eng);
      const CcfExample example{color, next_index++};
      const Flip drawn = outcome;
      auto oracle = [&](const CcfExample&) { return drawn; };
      switch (sel.protocol) {
        case Protocol::two_member:
          two_member_step(backend, state, example, oracle, committee_eng);
          break;
        case Protocol::thresholded:
        case Protocol::randomized:
          sequential_step(backend, state, example, sel, oracle, committee_eng);
          break;
        case Protocol::complete:
          complete_step(backend, state, example, oracle);
          break;
        case Protocol::batch:
          break;  // handled above
      }
    }
    if (cursor.due(state.tallies.examined)) emit();
  }
  if (!cfg.schedule.empty() && last_emit != state.tallies.examined) emit();

  result.stats = std::move(state.counts);
  result.tallies = state.tallies;
  return result;
}

// --- tagger runs -------------------------------------------------------------

TaggerRunResult run_tagger(const Lexicon& lexicon, const TaggedCorpus& train,
                           const TaggedCorpus& test, const TaggerRunConfig& cfg) {
  validate(cfg.selection);
  if (cfg.initial_words < 0)
    throw std::invalid_argument("run_tagger: negative initial_words");

  std::vector<std::size_t> order(train.sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (cfg.shuffle_sentences) {
    rng::Engine shuffle_eng = rng::make_engine(cfg.seed, streams::shuffle);
    rng::shuffle(order, shuffle_eng);
  }

  const SelectionConfig& sel = cfg.selection;
  HmmBackend backend;
  backend.sampling = sel.sampling();
  backend.bind(lexicon);
  LearnerState<HmmBackend> state;
  state.counts = HmmCounts(lexicon);

  TaggerRunResult result;

  // Fully labeled sentence prefix until the word budget is met.
  std::size_t cut = 0;
  while (cut < order.size() && result.initial_labeled_words < cfg.initial_words) {
    const Sentence& sentence = train.sentences[order[cut]];
    update_counts(state.counts, sentence);
    result.initial_labeled_words += static_cast<std::int64_t>(sentence.size());
    ++cut;
  }
  if (result.initial_labeled_words < cfg.initial_words)
    throw DataError("run_tagger: corpus smaller than the initial training prefix");
  result.initial_sentences = static_cast<std::int64_t>(cut);

  // Selection stream: segments of the remaining sentences, in stream order,
  // cycled if the examination budget outruns them.
  std::vector<HmmExample> base;
  std::vector<std::vector<TagId>> golds;
  for (std::size_t i = cut; i < order.size(); ++i) {
    const Sentence& sentence = train.sentences[order[i]];
    for (Segment& seg : segment_corpus(sentence, lexicon)) {
      std::vector<TagId> gold;
      gold.reserve(seg.words.size());
      for (std::size_t p = 0; p < seg.words.size(); ++p)
        gold.push_back(sentence[static_cast<std::size_t>(seg.first_pos) + p].tag);
      base.push_back({std::move(seg), static_cast<std::int64_t>(base.size())});
      golds.push_back(std::move(gold));
    }
  }
  result.stream_segments = static_cast<std::int64_t>(base.size());

  const std::int64_t budget =
      cfg.examine_budget < 0 ? result.stream_segments : cfg.examine_budget;
  if (budget > 0 && base.empty())
    throw DataError("run_tagger: no ambiguous segments to select from");

  const std::int64_t n = result.stream_segments;
  auto oracle = [&](const HmmExample& e) { return golds[static_cast<std::size_t>(e.stream_index % n)]; };

  std::int64_t last_emit = -1;
  auto emit = [&] {
    TaggerCurveRecord r;
    r.examined = state.tallies.examined;
    r.selected = state.tallies.selected;
    r.labeled_ambiguous = state.tallies.labeled_ambiguous;
    r.labeled_total = state.tallies.labeled_total;
    const HmmModel model = mle_model(state.counts, sel.smoothing);
    const AccuracyReport acc = evaluate_accuracy(model, test);
    r.acc_ambiguous = acc.ambiguous_accuracy();
    r.acc_all = acc.overall_accuracy();
    const ModelSize size = count_model_size(state.counts);
    r.lexical_nonzero = size.lexical_nonzero;
    r.bigram_nonzero = size.bigram_nonzero;
    r.sel_freq_window = state.window.frequency();
    r.amb_defined = acc.ambiguous_defined();
    result.records.push_back(r);
    last_emit = r.examined;
  };

  rng::Engine committee_eng = rng::make_engine(cfg.seed, streams::committee);
  ScheduleCursor cursor(cfg.schedule);
  if (cursor.due(0)) emit();

  std::int64_t next_index = 0;
  std::size_t pos = 0;
  std::vector<HmmExample> round;
  while (state.tallies.examined < budget) {
    if (sel.protocol == Protocol::batch) {
      const std::int64_t want =
          std::min<std::int64_t>(sel.batch_size, budget - state.tallies.examined);
      round.clear();
      round.reserve(static_cast<std::size_t>(want));
      for (std::int64_t i = 0; i < want; ++i) {
        round.push_back(base[pos]);
        round.back().stream_index = next_index++;
        pos = (pos + 1) % base.size();
      }
      batch_round(backend, state, std::span<const HmmExample>(round), sel, oracle,
                  committee_eng);
    } else {
      HmmExample example = base[pos];
      example.stream_index = next_index++;
      pos = (pos + 1) % base.size();
      switch (sel.protocol) {
        case Protocol::two_member:
          two_member_step(backend, state, example, oracle, committee_eng);
          break;
        case Protocol::thresholded:
        case Protocol::randomized:
          sequential_step(backend, state, example, sel, oracle, committee_eng);
          break;
        case Protocol::complete:
          complete_step(backend, state, example, oracle);
          break;
        case Protocol::batch:
          break;  // handled above
      }
    }
    if (cursor.due(state.tallies.examined)) emit();
  }
  if (!cfg.schedule.empty() && last_emit != state.tallies.examined) emit();

  result.counts = std::move(state.counts);
  result.tallies = state.tallies;
  return result;
}

// --- evaluation --------------------------------------------------------------

double AccuracyReport::ambiguous_accuracy() const {
  return ambiguous_total > 0
             ? static_cast<double>(ambiguous_correct) / static_cast<double>(ambiguous_total)
             : 0.0;
}

double AccuracyReport::overall_accuracy() const {
  return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

AccuracyReport evaluate_accuracy(const HmmModel& model, const TaggedCorpus& test) {
  AccuracyReport report;
  const Lexicon& lexicon = *model.lexicon;
  for (const Sentence& sentence : test.sentences) {
    report.total += static_cast<std::int64_t>(sentence.size());
    for (const Segment& segment : segment_corpus(sentence, lexicon)) {
      const ViterbiResult decoded = viterbi(model, segment);
      for (std::size_t i = 0; i < segment.words.size(); ++i) {
        const TagId gold = sentence[static_cast<std::size_t>(segment.first_pos) + i].tag;
        report.ambiguous_total += 1;
        if (decoded.tags[i] == gold) report.ambiguous_correct += 1;
      }
    }
  }
  report.correct = (report.total - report.ambiguous_total) + report.ambiguous_correct;
  return report;
}

ModelSize count_model_size(const HmmCounts& counts) {
  ModelSize size;
  for (const std::int64_t c : counts.lexical_counts)
    if (c > 0) size.lexical_nonzero += 1;
  for (const std::int64_t c : counts.transition_counts)
    if (c > 0) size.bigram_nonzero += 1;
  return size;
}

EntropyByCorrectness vote_entropy_by_correctness(const HmmCounts& counts,
                                                 const TaggedCorpus& test, int k,
                                                 const SamplingConfig& cfg,
                                                 rng::Engine& eng) {
  const Lexicon& lexicon = *counts.lexicon;
  const HmmModel point = mle_model(counts, cfg.smoothing);
  double correct_sum = 0.0;
  double incorrect_sum = 0.0;
  EntropyByCorrectness out;
  for (const Sentence& sentence : test.sentences) {
    for (const Segment& segment : segment_corpus(sentence, lexicon)) {
      const HmmCommittee committee = build_committee(counts, k, cfg, eng);
      const std::vector<VoteTally> tallies = vote(committee, segment);
      const ViterbiResult decoded = viterbi(point, segment);
      for (std::size_t i = 0; i < segment.words.size(); ++i) {
        const double h = normalized_vote_entropy(tallies[i], lexicon.tag_count());
        const TagId gold = sentence[static_cast<std::size_t>(segment.first_pos) + i].tag;
        if (decoded.tags[i] == gold) {
          correct_sum += h;
          out.correct_count += 1;
        } else {
          incorrect_sum += h;
          out.incorrect_count += 1;
        }
      }
    }
  }
  if (out.correct_count > 0) out.correct_mean = correct_sum / static_cast<double>(out.correct_count);
  if (out.incorrect_count > 0)
    out.incorrect_mean = incorrect_sum / static_cast<double>(out.incorrect_count);
  return out;
}

// --- output ------------------------------------------------------------------

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) throw DataError("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_csv(const std::string& path, std::span<const CcfCurveRecord> records) {
  std::ofstream out = open_out(path);
  out << "examined,selected,labeled_total,expected_acc,ptm_acc,sel_freq_window\n";
  char buf[256];
  for (const CcfCurveRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%.6f,%.6f,%.6f\n",
                  static_cast<long long>(r.examined), static_cast<long long>(r.selected),
                  static_cast<long long>(r.labeled_total), r.expected_acc, r.ptm_acc,
                  r.sel_freq_window);
    out << buf;
  }
  if (!out) throw DataError("write failed: " + path);
}

void write_csv(const std::string& path, std::span<const TaggerCurveRecord> records) {
  std::ofstream out = open_out(path);
  out << "examined,selected,labeled_ambiguous,labeled_total,acc_ambiguous,acc_all,"
         "lexical_nonzero,bigram_nonzero,sel_freq_window,amb_defined\n";
  char buf[320];
  for (const TaggerCurveRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%lld,%.6f,%.6f,%lld,%lld,%.6f,%d\n",
                  static_cast<long long>(r.examined), static_cast<long long>(r.selected),
                  static_cast<long long>(r.labeled_ambiguous),
                  static_cast<long long>(r.labeled_total), r.acc_ambiguous, r.acc_all,
                  static_cast<long long>(r.lexical_nonzero),
                  static_cast<long long>(r.bigram_nonzero), r.sel_freq_window,
                  r.amb_defined ? 1 : 0);
    out << buf;
  }
  if (!out) throw DataError("write failed: " + path);
}

std::string baseline_path(const std::string& out_path) {
  const std::size_t slash = out_path.find_last_of('/');
  const std::size_t dot = out_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + ".baseline";
  return out_path.substr(0, dot) + ".baseline" + out_path.substr(dot);
}

}  // namespace qbc
