// Seeded synthetic tagging tasks with a known ground truth.
//
// A random bigram chain over the tag set emits words through per-tag
// distributions that respect a generated closed lexicon, so every corpus
// token is lexicon-consistent by construction and selective-sampling runs can
// be scored against a model-attainable ceiling.
#pragma once

#include <cstdint>
#include <memory>

#include "qbc/hmm.hpp"
#include "qbc/lexicon.hpp"

namespace qbc {

struct SyntheticSpec {
  int tags = 20;
  int vocab = 1000;                // >= tags
  std::int64_t train_tokens = 100000;
  std::int64_t test_tokens = 0;
  double ambiguity = 0.6;          // fraction of words with >= 2 allowed tags
  std::uint64_t seed = 0;
  int min_sentence_len = 5;
  int max_sentence_len = 25;
};

struct SyntheticCorpus {
  // Held by pointer so the models below keep a stable lexicon address when
  // the bundle is moved around.
  std::unique_ptr<Lexicon> lexicon;
  TaggedCorpus train;
  TaggedCorpus test;
  HmmModel truth;  // generating transitions, induced lexical rows, stationary tag probs
};

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace qbc
