// Tag inventory, closed lexicon, tagged corpora, and ambiguity segmentation.
//
// The lexicon fixes the word and tag inventories: every corpus word must have
// a lexicon entry listing its allowed tags, and a word is ambiguous iff it
// allows more than one. Sentences split at unambiguous words into segments
// (maximal runs of ambiguous words), which are the selectable examples of the
// tagging task.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qbc {

using TagId = std::int32_t;
using WordId = std::int32_t;

class Lexicon;

class LexiconBuilder {
 public:
  // Repeated additions for one word merge their tag sets.
  void add(std::string_view word, std::string_view tag);
  Lexicon build() const;

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

// Immutable closed lexicon. Word and tag identifiers are dense indices in
// lexicographic name order, so identical entries always intern identically.
class Lexicon {
 public:
  int tag_count() const { return static_cast<int>(tag_names_.size()); }
  int word_count() const { return static_cast<int>(word_names_.size()); }

  // Transition-context id used for sentence starts. Never a real tag: it is
  // not emitted, not in any allowed set, and cannot be a transition target.
  TagId start_tag() const { return static_cast<TagId>(tag_names_.size()); }

  // Allowed tags of a word, ascending. Always nonempty.
  std::span<const TagId> allowed(WordId w) const;
  bool ambiguous(WordId w) const { return allowed(w).size() > 1; }

  // Layout of the flattened (word, allowed tag) table, shared by lexical
  // counts and lexical probabilities.
  std::size_t allowed_offset(WordId w) const;
  std::size_t allowed_total() const { return allowed_flat_.size(); }
  // Position of `t` within allowed(w), or -1 when not allowed.
  int allowed_index(WordId w, TagId t) const;

  const std::string& tag_name(TagId t) const;
  const std::string& word_name(WordId w) const;
  std::optional<TagId> find_tag(std::string_view name) const;
  std::optional<WordId> find_word(std::string_view name) const;

 private:
  friend class LexiconBuilder;
  std::vector<std::string> tag_names_;
  std::vector<std::string> word_names_;
  std::unordered_map<std::string, TagId> tag_ids_;
  std::unordered_map<std::string, WordId> word_ids_;
  std::vector<TagId> allowed_flat_;
  std::vector<std::size_t> offsets_;  // word_count()+1 entries
};

struct Token {
  WordId word;
  TagId tag;
  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct TaggedCorpus {
  std::vector<Sentence> sentences;
  std::int64_t token_count() const;
};

// Maximal run of ambiguous words. Anchors carry the tags of the flanking
// unambiguous words (or the start context / nothing at sentence boundaries);
// anchor words themselves are not part of `words`.
struct Segment {
  std::vector<WordId> words;
  TagId left_anchor = 0;
  std::optional<TagId> right_anchor;
  std::int32_t sentence = -1;   // provenance within the source corpus
  std::int32_t first_pos = -1;  // position of words[0] in that sentence
};

// Segments of one sentence, in order. Sentences with no ambiguous word yield
// none.
std::vector<Segment> segment_corpus(const Sentence& sentence, const Lexicon& lexicon);

}  // namespace qbc
