#include "qbc/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

std::string at_line(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line) + ": ";
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file: " + path);
  LexiconBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;  // blank line
    std::string tag;
    bool got_tag = false;
    while (fields >> tag) {
      got_tag = true;
      try {
        builder.add(word, tag);
      } catch (const DataError& e) {
        throw DataError(at_line(path, lineno) + e.what());
      }
    }
    if (!got_tag) throw DataError(at_line(path, lineno) + "word '" + word + "' has no tags");
    any = true;
  }
  if (!any) throw DataError("lexicon file is empty: " + path);
  return builder.build();
}

TaggedCorpus load_corpus(const std::string& path, const Lexicon& lexicon) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  TaggedCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    Sentence sentence;
    std::string token;
    while (fields >> token) {
      const auto slash = token.find('/');
      if (slash == std::string::npos)
        throw DataError(at_line(path, lineno) + "token '" + token + "' has no '/' separator");
      if (token.find('/', slash + 1) != std::string::npos)
        throw DataError(at_line(path, lineno) + "token '" + token + "' has more than one '/'");
      const std::string word = token.substr(0, slash);
      const std::string tag = token.substr(slash + 1);
      if (word.empty() || tag.empty())
        throw DataError(at_line(path, lineno) + "token '" + token + "' has an empty word or tag");
      const auto w = lexicon.find_word(word);
      if (!w) throw DataError(at_line(path, lineno) + "word '" + word + "' is not in the lexicon");
      const auto t = lexicon.find_tag(tag);
      if (!t || lexicon.allowed_index(*w, *t) < 0)
        throw DataError(at_line(path, lineno) + "tag '" + tag + "' is not allowed for word '" +
                        word + "'");
      sentence.push_back(Token{*w, *t});
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write lexicon file: " + path);
  for (WordId w = 0; w < lexicon.word_count(); ++w) {
    out << lexicon.word_name(w);
    for (const TagId t : lexicon.allowed(w)) out << ' ' << lexicon.tag_name(t);
    out << '\n';
  }
  if (!out) throw DataError("failed writing lexicon file: " + path);
}

void save_corpus(const TaggedCorpus& corpus, const Lexicon& lexicon,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const Sentence& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) out << ' ';
      out << lexicon.word_name(sentence[i].word) << '/' << lexicon.tag_name(sentence[i].tag);
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing corpus file: " + path);
}

}  // namespace qbc
