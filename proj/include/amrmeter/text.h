#ifndef AMRMETER_TEXT_H_
#define AMRMETER_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace amrmeter {

// Lowercases, splits on whitespace and detaches leading/trailing punctuation
// into separate tokens. Word-internal punctuation ("don't", "3.5",
// "well-known") stays attached.
std::vector<std::string> Tokenize(std::string_view text);

std::string ToLower(std::string_view s);

// Splits on runs of whitespace without any other processing.
std::vector<std::string> SplitWhitespace(std::string_view text);

bool IsPunctuationToken(std::string_view token);

// Small rule-based English lemmatizer: an irregular-form table, plural
// suffixes and -ing/-ed stripping with consonant undoubling. Input is
// lowercased first.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string Lemma(std::string_view token) const;
};

const Lemmatizer& DefaultLemmatizer();

}  // namespace amrmeter

#endif  // AMRMETER_TEXT_H_
