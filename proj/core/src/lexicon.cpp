#include "qbc/lexicon.hpp"

#include <algorithm>
#include <stdexcept>

#include "qbc/errors.hpp"

namespace qbc {

void LexiconBuilder::add(std::string_view word, std::string_view tag) {
  if (word.empty()) throw DataError("lexicon entry with empty word");
  if (tag.empty()) throw DataError("lexicon entry with empty tag");
  if (word.find('/') != std::string_view::npos)
    throw DataError("lexicon word contains '/': " + std::string(word));
  entries_[std::string(word)].insert(std::string(tag));
}

Lexicon LexiconBuilder::build() const {
  if (entries_.empty()) throw DataError("lexicon is empty");
  Lexicon lex;
  std::set<std::string> tags;
  for (const auto& [word, word_tags] : entries_)
    tags.insert(word_tags.begin(), word_tags.end());
  lex.tag_names_.assign(tags.begin(), tags.end());
  for (std::size_t i = 0; i < lex.tag_names_.size(); ++i)
    lex.tag_ids_.emplace(lex.tag_names_[i], static_cast<TagId>(i));
  lex.offsets_.reserve(entries_.size() + 1);
  lex.offsets_.push_back(0);
  for (const auto& [word, word_tags] : entries_) {
    lex.word_ids_.emplace(word, static_cast<WordId>(lex.word_names_.size()));
    lex.word_names_.push_back(word);
    for (const auto& t : word_tags)
      lex.allowed_flat_.push_back(lex.tag_ids_.at(t));
    // std::set iterates tag names alphabetically; ids are assigned in the same
    // order, so each allowed run is already ascending.
    lex.offsets_.push_back(lex.allowed_flat_.size());
  }
  return lex;
}

std::span<const TagId> Lexicon::allowed(WordId w) const {
  if (w < 0 || w >= word_count()) throw std::invalid_argument("Lexicon::allowed: word out of range");
  const auto lo = offsets_[static_cast<std::size_t>(w)];
  const auto hi = offsets_[static_cast<std::size_t>(w) + 1];
  return {allowed_flat_.data() + lo, hi - lo};
}

std::size_t Lexicon::allowed_offset(WordId w) const {
  if (w < 0 || w >= word_count()) throw std::invalid_argument("Lexicon::allowed_offset: word out of range");
  return offsets_[static_cast<std::size_t>(w)];
}

int Lexicon::allowed_index(WordId w, TagId t) const {
  const auto tags = allowed(w);
  const auto it = std::lower_bound(tags.begin(), tags.end(), t);
  if (it == tags.end() || *it != t) return -1;
  return static_cast<int>(it - tags.begin());
}

const std::string& Lexicon::tag_name(TagId t) const {
  if (t < 0 || t >= tag_count()) throw std::invalid_argument("Lexicon::tag_name: tag out of range");
  return tag_names_[static_cast<std::size_t>(t)];
}

const std::string& Lexicon::word_name(WordId w) const {
  if (w < 0 || w >= word_count()) throw std::invalid_argument("Lexicon::word_name: word out of range");
  return word_names_[static_cast<std::size_t>(w)];
}

std::optional<TagId> Lexicon::find_tag(std::string_view name) const {
  const auto it = tag_ids_.find(std::string(name));
  if (it == tag_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<WordId> Lexicon::find_word(std::string_view name) const {
  const auto it = word_ids_.find(std::string(name));
  if (it == word_ids_.end()) return std::nullopt;
  return it->second;
}

std::int64_t TaggedCorpus::token_count() const {
  std::int64_t n = 0;
  for (const auto& s : sentences) n += static_cast<std::int64_t>(s.size());
  return n;
}

std::vector<Segment> segment_corpus(const Sentence& sentence, const Lexicon& lexicon) {
  std::vector<Segment> segments;
  Segment current;
  current.left_anchor = lexicon.start_tag();
  bool open = false;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const WordId w = sentence[i].word;
    if (lexicon.ambiguous(w)) {
      if (!open) {
        open = true;
        current.first_pos = static_cast<std::int32_t>(i);
      }
      current.words.push_back(w);
    } else {
      const TagId anchor = lexicon.allowed(w)[0];
      if (open) {
        current.right_anchor = anchor;
        segments.push_back(std::move(current));
        current = Segment{};
        open = false;
      }
      current.left_anchor = anchor;
    }
  }
  if (open) segments.push_back(std::move(current));
  return segments;
}

}  // namespace qbc
