#include "qbc/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t transition_offset(const Lexicon& lex, TagId context) {
  if (context < 0 || context > lex.start_tag())
    throw std::invalid_argument("transition context out of range");
  return static_cast<std::size_t>(context) * static_cast<std::size_t>(lex.tag_count());
}

}  // namespace

HmmCounts::HmmCounts(const Lexicon& lex) : lexicon(&lex) {
  const auto t = static_cast<std::size_t>(lex.tag_count());
  tag_counts.assign(t, 0);
  transition_counts.assign((t + 1) * t, 0);
  transition_totals.assign(t + 1, 0);
  lexical_counts.assign(lex.allowed_total(), 0);
  lexical_totals.assign(static_cast<std::size_t>(lex.word_count()), 0);
}

std::span<const std::int64_t> HmmCounts::transition_row(TagId context) const {
  const auto off = transition_offset(*lexicon, context);
  return {transition_counts.data() + off, static_cast<std::size_t>(lexicon->tag_count())};
}

std::span<const std::int64_t> HmmCounts::lexical_row(WordId w) const {
  const auto off = lexicon->allowed_offset(w);
  return {lexical_counts.data() + off, lexicon->allowed(w).size()};
}

namespace {

void count_position(HmmCounts& c, TagId prev, WordId word, TagId tag) {
  const Lexicon& lex = *c.lexicon;
  const int idx = lex.allowed_index(word, tag);
  if (idx < 0)
    throw std::invalid_argument("update_counts: gold tag '" + lex.tag_name(tag) +
                                "' not allowed for word '" + lex.word_name(word) + "'");
  c.tag_counts[static_cast<std::size_t>(tag)] += 1;
  c.tag_total += 1;
  c.transition_counts[transition_offset(lex, prev) + static_cast<std::size_t>(tag)] += 1;
  c.transition_totals[static_cast<std::size_t>(prev)] += 1;
  c.lexical_counts[lex.allowed_offset(word) + static_cast<std::size_t>(idx)] += 1;
  c.lexical_totals[static_cast<std::size_t>(word)] += 1;
}

void count_transition(HmmCounts& c, TagId prev, TagId next) {
  c.transition_counts[transition_offset(*c.lexicon, prev) + static_cast<std::size_t>(next)] += 1;
  c.transition_totals[static_cast<std::size_t>(prev)] += 1;
}

}  // namespace

void update_counts(HmmCounts& counts, const Segment& segment,
                   std::span<const TagId> gold) {
  if (counts.lexicon == nullptr) throw std::invalid_argument("update_counts: counts not initialized");
  if (gold.size() != segment.words.size())
    throw std::invalid_argument("update_counts: gold length does not match segment");
  TagId prev = segment.left_anchor;
  for (std::size_t i = 0; i < segment.words.size(); ++i) {
    count_position(counts, prev, segment.words[i], gold[i]);
    prev = gold[i];
  }
  if (segment.right_anchor) count_transition(counts, prev, *segment.right_anchor);
}

void update_counts(HmmCounts& counts, const Sentence& sentence) {
  if (counts.lexicon == nullptr) throw std::invalid_argument("update_counts: counts not initialized");
  TagId prev = counts.lexicon->start_tag();
  for (const Token& tok : sentence) {
    count_position(counts, prev, tok.word, tok.tag);
    prev = tok.tag;
  }
}

std::span<const double> HmmModel::transition_row(TagId context) const {
  const auto off = transition_offset(*lexicon, context);
  return {transition.data() + off, static_cast<std::size_t>(lexicon->tag_count())};
}

std::span<const double> HmmModel::lexical_row(WordId w) const {
  const auto off = lexicon->allowed_offset(w);
  return {lexical.data() + off, lexicon->allowed(w).size()};
}

namespace {

std::vector<double> tag_mle(const HmmCounts& counts) {
  const Lexicon& lex = *counts.lexicon;
  if (counts.tag_total <= 0) throw DataError("tagger model: no tag observations at all");
  std::vector<double> p(static_cast<std::size_t>(lex.tag_count()));
  for (int t = 0; t < lex.tag_count(); ++t) {
    const auto n = counts.tag_counts[static_cast<std::size_t>(t)];
    if (n == 0)
      throw DataError("tagger model: tag '" + lex.tag_name(t) +
                      "' unseen in training counts; enlarge the initial training prefix");
    p[static_cast<std::size_t>(t)] =
        static_cast<double>(n) / static_cast<double>(counts.tag_total);
  }
  return p;
}

}  // namespace

HmmModel mle_model(const HmmCounts& counts, double lambda) {
  if (counts.lexicon == nullptr) throw std::invalid_argument("mle_model: counts not initialized");
  const Lexicon& lex = *counts.lexicon;
  HmmModel m;
  m.lexicon = &lex;
  m.tag_prob = tag_mle(counts);
  const auto t = static_cast<std::size_t>(lex.tag_count());
  m.transition.resize((t + 1) * t);
  for (TagId row = 0; row <= lex.start_tag(); ++row) {
    const auto off = transition_offset(lex, row);
    smoothed_estimate(counts.transition_row(row),
                      counts.transition_totals[static_cast<std::size_t>(row)], lambda,
                      {m.transition.data() + off, t});
  }
  m.lexical.resize(lex.allowed_total());
  for (WordId w = 0; w < lex.word_count(); ++w) {
    const auto off = lex.allowed_offset(w);
    smoothed_estimate(counts.lexical_row(w),
                      counts.lexical_totals[static_cast<std::size_t>(w)], lambda,
                      {m.lexical.data() + off, lex.allowed(w).size()});
  }
  return m;
}

HmmModel sample_model(const HmmCounts& counts, const SamplingConfig& cfg,
                      rng::Engine& eng) {
  if (counts.lexicon == nullptr) throw std::invalid_argument("sample_model: counts not initialized");
  validate(cfg);
  const Lexicon& lex = *counts.lexicon;
  HmmModel m;
  m.lexicon = &lex;
  m.tag_prob = tag_mle(counts);
  const auto t = static_cast<std::size_t>(lex.tag_count());
  m.transition.resize((t + 1) * t);
  for (TagId row = 0; row <= lex.start_tag(); ++row) {
    const auto off = transition_offset(lex, row);
    sample_multinomial(counts.transition_row(row),
                       counts.transition_totals[static_cast<std::size_t>(row)], cfg, eng,
                       {m.transition.data() + off, t});
  }
  m.lexical.resize(lex.allowed_total());
  for (WordId w = 0; w < lex.word_count(); ++w) {
    const auto off = lex.allowed_offset(w);
    sample_multinomial(counts.lexical_row(w),
                       counts.lexical_totals[static_cast<std::size_t>(w)], cfg, eng,
                       {m.lexical.data() + off, lex.allowed(w).size()});
  }
  return m;
}

HmmModel sample_segment_model(const HmmCounts& counts, const Segment& segment,
                              const SamplingConfig& cfg, rng::Engine& eng) {
  if (counts.lexicon == nullptr)
    throw std::invalid_argument("sample_segment_model: counts not initialized");
  validate(cfg);
  const Lexicon& lex = *counts.lexicon;
  HmmModel m;
  m.lexicon = &lex;
  m.tag_prob = tag_mle(counts);
  const auto t = static_cast<std::size_t>(lex.tag_count());
  m.transition.assign((t + 1) * t, 0.0);
  m.lexical.assign(lex.allowed_total(), 0.0);

  std::vector<char> context_needed(t + 1, 0);
  context_needed[static_cast<std::size_t>(segment.left_anchor)] = 1;
  for (const WordId w : segment.words)
    for (const TagId tag : lex.allowed(w)) context_needed[static_cast<std::size_t>(tag)] = 1;
  // Rows in ascending id order so the draw sequence is a pure function of the
  // touched row set.
  for (TagId row = 0; row <= lex.start_tag(); ++row) {
    if (!context_needed[static_cast<std::size_t>(row)]) continue;
    const auto off = transition_offset(lex, row);
    sample_multinomial(counts.transition_row(row),
                       counts.transition_totals[static_cast<std::size_t>(row)], cfg, eng,
                       {m.transition.data() + off, t});
  }
  std::vector<WordId> words(segment.words);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const WordId w : words) {
    const auto off = lex.allowed_offset(w);
    sample_multinomial(counts.lexical_row(w),
                       counts.lexical_totals[static_cast<std::size_t>(w)], cfg, eng,
                       {m.lexical.data() + off, lex.allowed(w).size()});
  }
  return m;
}

namespace {

// log P(t | w) + log P(t -> .) pieces share this guard: log of a zero
// probability is -inf, which max() handles; an all--inf position is reported.
double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

}  // namespace

ViterbiResult viterbi(const HmmModel& model, const Segment& segment) {
  if (model.lexicon == nullptr) throw std::invalid_argument("viterbi: model not initialized");
  const Lexicon& lex = *model.lexicon;
  const std::size_t n = segment.words.size();
  ViterbiResult result;
  if (n == 0) {
    if (segment.right_anchor)
      result.log_score =
          safe_log(model.transition_row(segment.left_anchor)[static_cast<std::size_t>(
              *segment.right_anchor)]);
    return result;
  }

  std::vector<std::span<const TagId>> allowed(n);
  for (std::size_t i = 0; i < n; ++i) allowed[i] = lex.allowed(segment.words[i]);

  // scores[i][a]: best log score of a path ending in allowed[i][a];
  // back[i][a]: index into allowed[i-1] of that path's predecessor.
  std::vector<std::vector<double>> scores(n);
  std::vector<std::vector<int>> back(n);

  {
    const auto row = model.transition_row(segment.left_anchor);
    const auto lexrow = model.lexical_row(segment.words[0]);
    scores[0].resize(allowed[0].size());
    back[0].assign(allowed[0].size(), -1);
    for (std::size_t a = 0; a < allowed[0].size(); ++a) {
      const TagId t = allowed[0][a];
      scores[0][a] = safe_log(row[static_cast<std::size_t>(t)]) + safe_log(lexrow[a]) -
                     safe_log(model.tag_prob[static_cast<std::size_t>(t)]);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const auto lexrow = model.lexical_row(segment.words[i]);
    scores[i].resize(allowed[i].size());
    back[i].resize(allowed[i].size());
    for (std::size_t a = 0; a < allowed[i].size(); ++a) {
      const TagId t = allowed[i][a];
      double best = kNegInf;
      int best_prev = 0;
      for (std::size_t b = 0; b < allowed[i - 1].size(); ++b) {
        const double cand =
            scores[i - 1][b] +
            safe_log(model.transition_row(allowed[i - 1][b])[static_cast<std::size_t>(t)]);
        if (cand > best) {  // strict: earlier (lower-id) predecessor wins ties
          best = cand;
          best_prev = static_cast<int>(b);
        }
      }
      scores[i][a] = best + safe_log(lexrow[a]) -
                     safe_log(model.tag_prob[static_cast<std::size_t>(t)]);
      back[i][a] = best_prev;
    }
  }

  double best = kNegInf;
  int best_last = -1;
  for (std::size_t a = 0; a < allowed[n - 1].size(); ++a) {
    double cand = scores[n - 1][a];
    if (segment.right_anchor)
      cand += safe_log(model.transition_row(allowed[n - 1][a])[static_cast<std::size_t>(
          *segment.right_anchor)]);
    if (cand > best) {
      best = cand;
      best_last = static_cast<int>(a);
    }
  }
  if (best_last < 0 || best == kNegInf)
    throw DataError("viterbi: no tag path with positive probability (unsmoothed model?)");

  result.log_score = best;
  result.tags.resize(n);
  int a = best_last;
  for (std::size_t i = n; i-- > 0;) {
    result.tags[i] = allowed[i][static_cast<std::size_t>(a)];
    a = back[i][static_cast<std::size_t>(a)];
  }
  return result;
}

double sequence_probability(const HmmModel& model, const Segment& segment) {
  if (model.lexicon == nullptr) throw std::invalid_argument("sequence_probability: model not initialized");
  const Lexicon& lex = *model.lexicon;
  const std::size_t n = segment.words.size();
  if (n == 0) {
    if (segment.right_anchor)
      return model.transition_row(segment.left_anchor)[static_cast<std::size_t>(
          *segment.right_anchor)];
    return 1.0;
  }
  std::vector<std::span<const TagId>> allowed(n);
  for (std::size_t i = 0; i < n; ++i) allowed[i] = lex.allowed(segment.words[i]);

  std::vector<double> alpha(allowed[0].size());
  {
    const auto row = model.transition_row(segment.left_anchor);
    const auto lexrow = model.lexical_row(segment.words[0]);
    for (std::size_t a = 0; a < allowed[0].size(); ++a) {
      const TagId t = allowed[0][a];
      alpha[a] = row[static_cast<std::size_t>(t)] * lexrow[a] /
                 model.tag_prob[static_cast<std::size_t>(t)];
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const auto lexrow = model.lexical_row(segment.words[i]);
    std::vector<double> next(allowed[i].size(), 0.0);
    for (std::size_t a = 0; a < allowed[i].size(); ++a) {
      const TagId t = allowed[i][a];
      double sum = 0.0;
      for (std::size_t b = 0; b < allowed[i - 1].size(); ++b)
        sum += alpha[b] *
               model.transition_row(allowed[i - 1][b])[static_cast<std::size_t>(t)];
      next[a] = sum * lexrow[a] / model.tag_prob[static_cast<std::size_t>(t)];
    }
    alpha = std::move(next);
  }
  double total = 0.0;
  for (std::size_t a = 0; a < allowed[n - 1].size(); ++a) {
    double term = alpha[a];
    if (segment.right_anchor)
      term *= model.transition_row(allowed[n - 1][a])[static_cast<std::size_t>(
          *segment.right_anchor)];
    total += term;
  }
  return total;
}

}  // namespace qbc
