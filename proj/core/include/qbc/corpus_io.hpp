// Plain-text formats for lexicons and tagged corpora.
//
// Lexicon file: one word per line, "word TAG1 TAG2 ...". Duplicate word lines
// merge their tag lists.
// Corpus file: one sentence per line of whitespace-separated "word/TAG"
// tokens. Every word must appear in the lexicon and carry one of its allowed
// tags; violations are reported with the offending line number.
#pragma once

#include <string>

#include "qbc/lexicon.hpp"

namespace qbc {

Lexicon load_lexicon(const std::string& path);
TaggedCorpus load_corpus(const std::string& path, const Lexicon& lexicon);

void save_lexicon(const Lexicon& lexicon, const std::string& path);
void save_corpus(const TaggedCorpus& corpus, const Lexicon& lexicon,
                 const std::string& path);

}  // namespace qbc
