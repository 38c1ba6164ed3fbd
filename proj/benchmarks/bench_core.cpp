// Microbenchmarks for the kernels the experiment drivers spend their time in:
// posterior draws, committee votes, decoding, and the per-example selection
// decision. Build with -DQBC_BUILD_BENCHMARKS=ON; run the binary directly.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qbc/ccf.hpp"
#include "qbc/committee.hpp"
#include "qbc/hmm.hpp"
#include "qbc/posterior.hpp"
#include "qbc/rng.hpp"
#include "qbc/selection.hpp"
#include "qbc/synthetic.hpp"

namespace {

using namespace qbc;

// Shared corpus-scale fixture, built once. Moderate size keeps the registry
// fast to start while the counts stay dense enough to be representative.
struct TaggerFixture {
  SyntheticCorpus corpus;
  HmmCounts counts;
  Segment segment;  // a mid-length ambiguous segment from the test half

  TaggerFixture() {
    SyntheticSpec spec;
    spec.tags = 15;
    spec.vocab = 400;
    spec.train_tokens = 30000;
    spec.test_tokens = 2000;
    spec.ambiguity = 0.6;
    spec.seed = 11;
    corpus = generate_synthetic_corpus(spec);
    counts = HmmCounts(*corpus.lexicon);
    for (const Sentence& s : corpus.train.sentences) update_counts(counts, s);
    for (const Sentence& s : corpus.test.sentences) {
      for (Segment& seg : segment_corpus(s, *corpus.lexicon))
        if (seg.words.size() >= 4 && segment.words.empty()) segment = seg;
      if (!segment.words.empty()) break;
    }
  }
};

const TaggerFixture& tagger() {
  static const TaggerFixture fixture;
  return fixture;
}

void BM_TruncatedDraw(benchmark::State& state) {
  rng::Engine eng = rng::make_engine(1, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_truncated_parameter(0.3, 10, 1.0, eng));
}
BENCHMARK(BM_TruncatedDraw);

void BM_MultinomialRowDraw(benchmark::State& state) {
  const int classes = static_cast<int>(state.range(0));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(classes));
  std::int64_t total = 0;
  for (int i = 0; i < classes; ++i) {
    counts[static_cast<std::size_t>(i)] = 3 + (i % 7);
    total += counts[static_cast<std::size_t>(i)];
  }
  std::vector<double> out(static_cast<std::size_t>(classes));
  const SamplingConfig cfg{50.0, 0.05};
  rng::Engine eng = rng::make_engine(2, 1);
  for (auto _ : state) {
    sample_multinomial(counts, total, cfg, eng, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MultinomialRowDraw)->Arg(2)->Arg(20)->Arg(50);

void BM_FullModelDraw(benchmark::State& state) {
  const TaggerFixture& fx = tagger();
  const SamplingConfig cfg{50.0, 0.05};
  rng::Engine eng = rng::make_engine(3, 1);
  for (auto _ : state) {
    const HmmModel member = sample_model(fx.counts, cfg, eng);
    benchmark::DoNotOptimize(member.transition.data());
  }
}
BENCHMARK(BM_FullModelDraw);

void BM_SegmentModelDraw(benchmark::State& state) {
  const TaggerFixture& fx = tagger();
  const SamplingConfig cfg{50.0, 0.05};
  rng::Engine eng = rng::make_engine(3, 1);
  for (auto _ : state) {
    const HmmModel member = sample_segment_model(fx.counts, fx.segment, cfg, eng);
    benchmark::DoNotOptimize(member.transition.data());
  }
}
BENCHMARK(BM_SegmentModelDraw);

void BM_ViterbiDecode(benchmark::State& state) {
  const TaggerFixture& fx = tagger();
  const HmmModel model = mle_model(fx.counts, 0.05);
  for (auto _ : state) {
    const ViterbiResult r = viterbi(model, fx.segment);
    benchmark::DoNotOptimize(r.tags.data());
  }
}
BENCHMARK(BM_ViterbiDecode);

void BM_VoteEntropy(benchmark::State& state) {
  const VoteTally tally = [] {
    VoteTally t;
    t.votes = {3, 1, 1};
    return t;
  }();
  for (auto _ : state)
    benchmark::DoNotOptimize(normalized_vote_entropy(tally, 20));
}
BENCHMARK(BM_VoteEntropy);

void BM_CcfCommitteeVote(benchmark::State& state) {
  rng::Engine weng = rng::make_engine(4, 1);
  const CcfWorld world = random_world(50, weng);
  CcfStats stats(world.color_count());
  rng::Engine feng = rng::make_engine(5, 1);
  for (int i = 0; i < 500; ++i) {
    const auto [color, outcome] = draw_flip(world, feng);
    stats.add_flip(color, outcome);
  }
  const SamplingConfig cfg{1.0, 0.05};
  rng::Engine eng = rng::make_engine(6, 1);
  for (auto _ : state) {
    const CcfCommittee committee = build_committee(stats, 2, cfg, eng);
    benchmark::DoNotOptimize(vote(committee, 7));
  }
}
BENCHMARK(BM_CcfCommitteeVote);

void BM_TaggerSelectionDecision(benchmark::State& state) {
  const TaggerFixture& fx = tagger();
  HmmBackend backend;
  backend.sampling = {50.0, 0.05};
  backend.bind(*fx.corpus.lexicon);
  const HmmExample example{fx.segment, 0};
  rng::Engine eng = rng::make_engine(7, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(two_member_disagree(backend, fx.counts, example, eng));
}
BENCHMARK(BM_TaggerSelectionDecision);

}  // namespace

BENCHMARK_MAIN();
