#include "qbc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/rng.hpp"

namespace qbc {
namespace {

constexpr std::uint64_t kSyntheticStream = 101;

std::string padded_name(char prefix, int index, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%0*d", prefix, std::clamp(width, 1, 10), index);
  return std::string(buf);
}

int digits_for(int count) {
  int width = 1;
  for (int v = count - 1; v >= 10; v /= 10) ++width;
  return width;
}

void validate(const SyntheticSpec& spec) {
  if (spec.tags < 2) throw std::invalid_argument("synthetic: need at least 2 tags");
  if (spec.vocab < spec.tags)
    throw std::invalid_argument("synthetic: vocab must be at least the tag count");
  if (spec.train_tokens < 1) throw std::invalid_argument("synthetic: train_tokens must be positive");
  if (spec.test_tokens < 0) throw std::invalid_argument("synthetic: test_tokens must be nonnegative");
  if (spec.ambiguity < 0.0 || spec.ambiguity > 1.0)
    throw std::invalid_argument("synthetic: ambiguity must lie in [0, 1]");
  if (spec.min_sentence_len < 1 || spec.max_sentence_len < spec.min_sentence_len)
    throw std::invalid_argument("synthetic: bad sentence length range");
}

// Strictly positive weights, normalized in place.
std::vector<double> random_distribution(std::size_t n, rng::Engine& eng) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = 1.0 - rng::uniform01(eng);  // (0, 1]
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

std::size_t draw_index(std::span<const double> cdf, rng::Engine& eng) {
  const double u = rng::uniform01(eng);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    run += probs[i];
    cdf[i] = run;
  }
  if (!cdf.empty()) cdf.back() = 1.0;
  return cdf;
}

std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int iter = 0; iter < 200; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * rows[i][j];
    double sum = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& v : next) v /= sum;
    pi.swap(next);
  }
  return pi;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  validate(spec);
  rng::Engine eng = rng::make_engine(spec.seed, kSyntheticStream);

  const int T = spec.tags;
  const int V = spec.vocab;

  // Allowed-tag sets over provisional ids. Word w always carries tag w % T so
  // every tag has lexical support; a seeded subset also gets 1-2 extra tags.
  std::vector<std::set<int>> allowed(static_cast<std::size_t>(V));
  for (int w = 0; w < V; ++w) allowed[static_cast<std::size_t>(w)].insert(w % T);

  std::vector<int> order(static_cast<std::size_t>(V));
  std::iota(order.begin(), order.end(), 0);
  rng::shuffle(order, eng);
  const int ambiguous_words = static_cast<int>(std::llround(spec.ambiguity * V));
  std::vector<char> make_ambiguous(static_cast<std::size_t>(V), 0);
  for (int i = 0; i < ambiguous_words; ++i) make_ambiguous[static_cast<std::size_t>(order[i])] = 1;

  for (int w = 0; w < V; ++w) {
    if (!make_ambiguous[static_cast<std::size_t>(w)]) continue;
    auto& tags = allowed[static_cast<std::size_t>(w)];
    const int extras = rng::uniform01(eng) < 0.7 ? 1 : 2;
    while (static_cast<int>(tags.size()) < std::min(T, 1 + extras))
      tags.insert(static_cast<int>(rng::below(eng, static_cast<std::uint64_t>(T))));
  }

  // Generating chain: one transition row per tag plus a sentence-start row.
  std::vector<std::vector<double>> transition_rows;
  transition_rows.reserve(static_cast<std::size_t>(T) + 1);
  for (int row = 0; row <= T; ++row)
    transition_rows.push_back(random_distribution(static_cast<std::size_t>(T), eng));

  // Emission distributions over each tag's supporting words.
  std::vector<std::vector<int>> support(static_cast<std::size_t>(T));
  for (int w = 0; w < V; ++w)
    for (int t : allowed[static_cast<std::size_t>(w)]) support[static_cast<std::size_t>(t)].push_back(w);
  std::vector<std::vector<double>> emission(static_cast<std::size_t>(T));
  std::vector<std::vector<double>> emission_cdf(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    emission[static_cast<std::size_t>(t)] = random_distribution(support[static_cast<std::size_t>(t)].size(), eng);
    emission_cdf[static_cast<std::size_t>(t)] = cumulative(emission[static_cast<std::size_t>(t)]);
  }

  std::vector<std::vector<double>> transition_cdf;
  transition_cdf.reserve(transition_rows.size());
  for (const auto& row : transition_rows) transition_cdf.push_back(cumulative(row));

  const int tag_width = digits_for(T);
  const int word_width = digits_for(V);

  struct RawToken {
    int word;
    int tag;
  };
  using RawSentence = std::vector<RawToken>;

  auto emit_sentences = [&](std::int64_t budget) {
    std::vector<RawSentence> out;
    std::int64_t total = 0;
    while (total < budget) {
      const int span = spec.max_sentence_len - spec.min_sentence_len + 1;
      int len = spec.min_sentence_len +
                static_cast<int>(rng::below(eng, static_cast<std::uint64_t>(span)));
      len = static_cast<int>(std::min<std::int64_t>(len, budget - total));
      RawSentence sentence;
      sentence.reserve(static_cast<std::size_t>(len));
      int prev = T;  // start context
      for (int i = 0; i < len; ++i) {
        const int tag = static_cast<int>(
            draw_index(transition_cdf[static_cast<std::size_t>(prev)], eng));
        const auto& words = support[static_cast<std::size_t>(tag)];
        const int word = words[draw_index(emission_cdf[static_cast<std::size_t>(tag)], eng)];
        sentence.push_back({word, tag});
        prev = tag;
      }
      total += len;
      out.push_back(std::move(sentence));
    }
    return out;
  };

  const auto raw_train = emit_sentences(spec.train_tokens);
  const auto raw_test = emit_sentences(spec.test_tokens);

  // The lexicon keeps only emitted words; ids are re-derived from names.
  std::vector<char> emitted(static_cast<std::size_t>(V), 0);
  for (const auto* corpus : {&raw_train, &raw_test})
    for (const auto& sentence : *corpus)
      for (const auto& token : sentence) emitted[static_cast<std::size_t>(token.word)] = 1;

  LexiconBuilder builder;
  std::vector<std::string> tag_names(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) tag_names[static_cast<std::size_t>(t)] = padded_name('t', t, tag_width);
  for (int w = 0; w < V; ++w) {
    if (!emitted[static_cast<std::size_t>(w)]) continue;
    const std::string word = padded_name('w', w, word_width);
    for (int t : allowed[static_cast<std::size_t>(w)]) builder.add(word, tag_names[static_cast<std::size_t>(t)]);
  }

  auto result = SyntheticCorpus{};
  result.lexicon = std::make_unique<Lexicon>(builder.build());
  const Lexicon& lex = *result.lexicon;
  if (lex.tag_count() != T)
    throw DataError("synthetic: some tag was never emitted; increase the token budget");

  // Zero-padded names sort numerically, so tag ids match the provisional ones.
  for (int t = 0; t < T; ++t)
    if (lex.tag_name(t) != tag_names[static_cast<std::size_t>(t)])
      throw std::logic_error("synthetic: tag id remap is not the identity");

  std::unordered_map<int, WordId> word_ids;
  word_ids.reserve(static_cast<std::size_t>(V));
  std::vector<int> provisional_of(static_cast<std::size_t>(lex.word_count()), -1);
  for (int w = 0; w < V; ++w) {
    if (!emitted[static_cast<std::size_t>(w)]) continue;
    const WordId id = lex.find_word(padded_name('w', w, word_width)).value();
    word_ids[w] = id;
    provisional_of[static_cast<std::size_t>(id)] = w;
  }

  auto convert = [&](const std::vector<RawSentence>& raw) {
    TaggedCorpus corpus;
    corpus.sentences.reserve(raw.size());
    for (const auto& sentence : raw) {
      Sentence out;
      out.reserve(sentence.size());
      for (const auto& token : sentence)
        out.push_back({word_ids.at(token.word), static_cast<TagId>(token.tag)});
      corpus.sentences.push_back(std::move(out));
    }
    return corpus;
  };
  result.train = convert(raw_train);
  result.test = convert(raw_test);

  // Ground-truth model in the library's parameterization: the generating
  // transitions, P(tag) as the chain's stationary distribution, and
  // P(tag | word) induced per word from pi_t * P(word | tag).
  std::vector<std::vector<double>> tag_rows(transition_rows.begin(), transition_rows.end() - 1);
  const std::vector<double> pi = stationary_distribution(tag_rows);

  std::vector<std::vector<double>> word_prob(static_cast<std::size_t>(T),
                                             std::vector<double>(static_cast<std::size_t>(V), 0.0));
  for (int t = 0; t < T; ++t) {
    const auto& words = support[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < words.size(); ++i)
      word_prob[static_cast<std::size_t>(t)][static_cast<std::size_t>(words[i])] =
          emission[static_cast<std::size_t>(t)][i];
  }

  HmmModel& truth = result.truth;
  truth.lexicon = result.lexicon.get();
  truth.tag_prob = pi;
  truth.transition.assign(static_cast<std::size_t>(T + 1) * static_cast<std::size_t>(T), 0.0);
  for (int row = 0; row <= T; ++row)
    std::copy(transition_rows[static_cast<std::size_t>(row)].begin(),
              transition_rows[static_cast<std::size_t>(row)].end(),
              truth.transition.begin() + static_cast<std::ptrdiff_t>(row) * T);
  truth.lexical.assign(lex.allowed_total(), 0.0);
  for (WordId w = 0; w < lex.word_count(); ++w) {
    const auto tags = lex.allowed(w);
    const std::size_t base = lex.allowed_offset(w);
    const int raw = provisional_of[static_cast<std::size_t>(w)];
    if (raw < 0) throw std::logic_error("synthetic: lexicon word without a provisional id");
    double sum = 0.0;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      const double p = pi[static_cast<std::size_t>(tags[i])] *
                       word_prob[static_cast<std::size_t>(tags[i])][static_cast<std::size_t>(raw)];
      truth.lexical[base + i] = p;
      sum += p;
    }
    for (std::size_t i = 0; i < tags.size(); ++i) truth.lexical[base + i] /= sum;
  }
  return result;
}

}  // namespace qbc
