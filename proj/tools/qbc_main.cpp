// Command-line driver: seeded selective-sampling experiments over the
// coin-flipper testbed (`ccf`), the bigram tagger (`tag`), and a generator
// for synthetic tagging corpora (`gen-corpus`).
//
// Exit codes: 0 success, 1 usage or configuration error, 2 malformed input
// data, 3 internal error.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbc/corpus_io.hpp"
#include "qbc/errors.hpp"
#include "qbc/experiment.hpp"
#include "qbc/synthetic.hpp"

namespace {

struct ProtocolFlags {
  std::string protocol = "two_member";
  int committee = 0;        // 0: protocol default (2 for two_member, else 5)
  double temperature = 0.0; // 0: protocol default (1 for two_member, else 50)
  double lambda = 0.05;
  double theta = 0.0;
  double gain = 1.0;
  int batch_size = 500;
  int batch_quota = 5;
  bool avg_ambiguous_only = false;
};

void add_protocol_flags(CLI::App* cmd, ProtocolFlags& f) {
  cmd->add_option("--protocol", f.protocol,
                  "two_member | thresholded | randomized | batch | complete")
      ->capture_default_str();
  cmd->add_option("--k", f.committee, "committee size (default 2 for two_member, else 5)");
  cmd->add_option("--temperature", f.temperature,
                  "posterior variance multiplier (default 1 for two_member, else 50)");
  cmd->add_option("--lambda", f.lambda, "smoothing weight toward uniform")
      ->capture_default_str();
  cmd->add_option("--theta", f.theta, "selection threshold (thresholded)")
      ->capture_default_str();
  cmd->add_option("--gain", f.gain, "selection probability gain (randomized)")
      ->capture_default_str();
  cmd->add_option("--batch-size", f.batch_size, "examples scored per batch round")
      ->capture_default_str();
  cmd->add_option("--batch-quota", f.batch_quota, "examples labeled per batch round")
      ->capture_default_str();
  cmd->add_flag("--avg-ambiguous-only", f.avg_ambiguous_only,
                "average vote entropy over ambiguous positions only");
}

qbc::SelectionConfig to_selection(const ProtocolFlags& f) {
  const auto p = qbc::parse_protocol(f.protocol);
  if (!p) throw std::invalid_argument("unknown protocol '" + f.protocol + "'");
  qbc::SelectionConfig cfg;
  cfg.protocol = *p;
  const bool pair = *p == qbc::Protocol::two_member;
  cfg.committee_size = f.committee > 0 ? f.committee : (pair ? 2 : 5);
  cfg.temperature = f.temperature > 0.0 ? f.temperature : (pair ? 1.0 : 50.0);
  cfg.smoothing = f.lambda;
  cfg.threshold = f.theta;
  cfg.gain = f.gain;
  cfg.batch_size = f.batch_size;
  cfg.batch_quota = f.batch_quota;
  cfg.avg_ambiguous_only = f.avg_ambiguous_only;
  qbc::validate(cfg);
  return cfg;
}

struct CcfArgs {
  ProtocolFlags flags;
  int colors = 50;
  std::int64_t initial = 50;
  std::int64_t examine = 5000;
  std::uint64_t seed = 0;
  std::string schedule = "every:100";
  std::string out;
  bool baseline = false;
};

int run_ccf_command(const CcfArgs& args) {
  qbc::CcfRunConfig cfg;
  cfg.selection = to_selection(args.flags);
  cfg.schedule = qbc::parse_schedule(args.schedule);
  cfg.seed = args.seed;
  cfg.initial_flips = args.initial;
  cfg.examine_budget = args.examine;

  qbc::rng::Engine world_eng = qbc::rng::make_engine(args.seed, qbc::streams::world);
  const qbc::CcfWorld world = qbc::random_world(args.colors, world_eng);

  const qbc::CcfRunResult run = qbc::run_ccf(world, cfg);
  if (!args.out.empty()) qbc::write_csv(args.out, run.records);

  if (args.baseline) {
    qbc::CcfRunConfig base = cfg;
    base.selection.protocol = qbc::Protocol::complete;
    const qbc::CcfRunResult ref = qbc::run_ccf(world, base);
    if (!args.out.empty()) qbc::write_csv(qbc::baseline_path(args.out), ref.records);
  }

  const qbc::CcfModel model = qbc::estimate_model(run.stats, cfg.selection.smoothing);
  std::printf("colors %d  examined %lld  selected %lld  labeled %lld\n", args.colors,
              static_cast<long long>(run.tallies.examined),
              static_cast<long long>(run.tallies.selected),
              static_cast<long long>(run.tallies.labeled_total));
  std::printf("expected_acc %.6f  ptm_acc %.6f\n", qbc::expected_accuracy(model, world),
              qbc::ptm_accuracy(world));
  return 0;
}

struct TagArgs {
  ProtocolFlags flags;
  std::string lexicon;
  std::string corpus;
  std::string test_corpus;
  std::int64_t initial = 1000;
  std::int64_t examine = -1;
  std::uint64_t seed = 0;
  std::string schedule = "every:500";
  std::string out;
  bool baseline = false;
  bool no_shuffle = false;
  bool entropy_split = false;
};

int run_tag_command(const TagArgs& args) {
  qbc::TaggerRunConfig cfg;
  cfg.selection = to_selection(args.flags);
  cfg.schedule = qbc::parse_schedule(args.schedule);
  cfg.seed = args.seed;
  cfg.initial_words = args.initial;
  cfg.examine_budget = args.examine;
  cfg.shuffle_sentences = !args.no_shuffle;

  if (args.entropy_split && args.test_corpus.empty())
    throw std::invalid_argument("--entropy-split requires --test-corpus");

  const qbc::Lexicon lexicon = qbc::load_lexicon(args.lexicon);
  const qbc::TaggedCorpus train = qbc::load_corpus(args.corpus, lexicon);
  qbc::TaggedCorpus test;
  if (!args.test_corpus.empty()) test = qbc::load_corpus(args.test_corpus, lexicon);

  const qbc::TaggerRunResult run = qbc::run_tagger(lexicon, train, test, cfg);
  if (!args.out.empty()) qbc::write_csv(args.out, run.records);

  if (args.baseline) {
    qbc::TaggerRunConfig base = cfg;
    base.selection.protocol = qbc::Protocol::complete;
    const qbc::TaggerRunResult ref = qbc::run_tagger(lexicon, train, test, base);
    if (!args.out.empty()) qbc::write_csv(qbc::baseline_path(args.out), ref.records);
  }

  std::printf("initial sentences %lld (%lld words)\n",
              static_cast<long long>(run.initial_sentences),
              static_cast<long long>(run.initial_labeled_words));
  std::printf("examined %lld  selected %lld  labeled %lld words (%lld ambiguous)\n",
              static_cast<long long>(run.tallies.examined),
              static_cast<long long>(run.tallies.selected),
              static_cast<long long>(run.tallies.labeled_total),
              static_cast<long long>(run.tallies.labeled_ambiguous));
  const qbc::ModelSize size = qbc::count_model_size(run.counts);
  std::printf("model size: %lld lexical, %lld bigram\n",
              static_cast<long long>(size.lexical_nonzero),
              static_cast<long long>(size.bigram_nonzero));
  if (!test.sentences.empty()) {
    const qbc::HmmModel model = qbc::mle_model(run.counts, cfg.selection.smoothing);
    const qbc::AccuracyReport acc = qbc::evaluate_accuracy(model, test);
    std::printf("accuracy: %.6f ambiguous (%lld/%lld), %.6f overall\n",
                acc.ambiguous_accuracy(), static_cast<long long>(acc.ambiguous_correct),
                static_cast<long long>(acc.ambiguous_total), acc.overall_accuracy());
    if (args.entropy_split) {
      qbc::rng::Engine eng = qbc::rng::make_engine(args.seed, qbc::streams::diagnostics);
      const auto split = qbc::vote_entropy_by_correctness(
          run.counts, test, cfg.selection.committee_size, cfg.selection.sampling(), eng);
      std::printf("vote entropy on test: %.4f over %lld correctly tagged, "
                  "%.4f over %lld mistagged\n",
                  split.correct_mean, static_cast<long long>(split.correct_count),
                  split.incorrect_mean, static_cast<long long>(split.incorrect_count));
    }
  }
  return 0;
}

struct GenArgs {
  int tags = 20;
  int vocab = 1000;
  std::int64_t tokens = 100000;
  std::int64_t test_tokens = 0;
  double ambiguity = 0.6;
  std::uint64_t seed = 0;
  std::string out;
  std::string test_out;
  std::string lexicon_out;
};

int run_gen_command(const GenArgs& args) {
  if (args.test_tokens > 0 && args.test_out.empty())
    throw std::invalid_argument("--test-tokens needs --test-out");

  qbc::SyntheticSpec spec;
  spec.tags = args.tags;
  spec.vocab = args.vocab;
  spec.train_tokens = args.tokens;
  spec.test_tokens = args.test_tokens;
  spec.ambiguity = args.ambiguity;
  spec.seed = args.seed;

  const qbc::SyntheticCorpus sc = qbc::generate_synthetic_corpus(spec);
  qbc::save_lexicon(*sc.lexicon, args.lexicon_out);
  qbc::save_corpus(sc.train, *sc.lexicon, args.out);
  if (!args.test_out.empty()) qbc::save_corpus(sc.test, *sc.lexicon, args.test_out);

  std::int64_t ambiguous_words = 0;
  for (qbc::WordId w = 0; w < sc.lexicon->word_count(); ++w)
    if (sc.lexicon->ambiguous(w)) ++ambiguous_words;
  std::printf("lexicon: %d words (%lld ambiguous), %d tags\n", sc.lexicon->word_count(),
              static_cast<long long>(ambiguous_words), sc.lexicon->tag_count());
  std::printf("train %lld tokens in %zu sentences; test %lld tokens\n",
              static_cast<long long>(sc.train.token_count()), sc.train.sentences.size(),
              static_cast<long long>(sc.test.token_count()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Committee-based selective sampling for probabilistic classifiers"};
  app.require_subcommand(1);

  CcfArgs ccf_args;
  CLI::App* ccf = app.add_subcommand("ccf", "Simulate selection on a random coin-flipper");
  add_protocol_flags(ccf, ccf_args.flags);
  ccf->add_option("--colors", ccf_args.colors, "number of coin colors")->capture_default_str();
  ccf->add_option("--initial", ccf_args.initial, "labeled flips before selection starts")
      ->capture_default_str();
  ccf->add_option("--examine", ccf_args.examine, "flips to examine")->capture_default_str();
  ccf->add_option("--seed", ccf_args.seed, "run seed")->capture_default_str();
  ccf->add_option("--schedule", ccf_args.schedule, "progress rows: every:N or c1,c2,...")
      ->capture_default_str();
  ccf->add_option("--out", ccf_args.out, "learning-curve CSV path");
  ccf->add_flag("--baseline", ccf_args.baseline,
                "also run complete training on the same flips (<out>.baseline.csv)");

  TagArgs tag_args;
  CLI::App* tag = app.add_subcommand("tag", "Selective sampling for the bigram tagger");
  add_protocol_flags(tag, tag_args.flags);
  tag->add_option("--lexicon", tag_args.lexicon, "lexicon file")->required();
  tag->add_option("--corpus", tag_args.corpus, "tagged training corpus")->required();
  tag->add_option("--test-corpus", tag_args.test_corpus, "tagged held-out corpus");
  tag->add_option("--initial", tag_args.initial, "fully labeled prefix, in words")
      ->capture_default_str();
  tag->add_option("--examine", tag_args.examine, "segments to examine (-1: one pass)")
      ->capture_default_str();
  tag->add_option("--seed", tag_args.seed, "run seed")->capture_default_str();
  tag->add_option("--schedule", tag_args.schedule, "progress rows: every:N or c1,c2,...")
      ->capture_default_str();
  tag->add_option("--out", tag_args.out, "learning-curve CSV path");
  tag->add_flag("--baseline", tag_args.baseline,
                "also run complete training on the same stream (<out>.baseline.csv)");
  tag->add_flag("--no-shuffle", tag_args.no_shuffle, "keep corpus sentence order");
  tag->add_flag("--entropy-split", tag_args.entropy_split,
                "report vote entropy split by decoder correctness on the test set");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-corpus", "Generate a synthetic tagging task");
  gen->add_option("--tags", gen_args.tags, "tag inventory size")->capture_default_str();
  gen->add_option("--vocab", gen_args.vocab, "vocabulary size")->capture_default_str();
  gen->add_option("--tokens", gen_args.tokens, "training tokens")->capture_default_str();
  gen->add_option("--test-tokens", gen_args.test_tokens, "held-out tokens")
      ->capture_default_str();
  gen->add_option("--ambiguity", gen_args.ambiguity, "fraction of words with extra tags")
      ->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_args.out, "training corpus path")->required();
  gen->add_option("--test-out", gen_args.test_out, "held-out corpus path");
  gen->add_option("--lexicon-out", gen_args.lexicon_out, "lexicon path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (ccf->parsed()) return run_ccf_command(ccf_args);
    if (tag->parsed()) return run_tag_command(tag_args);
    if (gen->parsed()) return run_gen_command(gen_args);
  } catch (const qbc::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
