#include "amrmeter/text.h"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace amrmeter {
namespace {

bool IsPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool HasVowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return IsVowel(c) || c == 'y'; });
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Consonant-vowel-consonant ending, last letter not w/x/y ("mak", "rid").
bool EndsCvc(std::string_view s) {
  if (s.size() < 3) return false;
  char a = s[s.size() - 3], b = s[s.size() - 2], c = s[s.size() - 1];
  return !IsVowel(a) && IsVowel(b) && !IsVowel(c) && c != 'w' && c != 'x' &&
         c != 'y';
}

// Restores the stem of an -ing/-ed form: undoubles a final consonant pair
// ("hitt" -> "hit") or appends a silent e ("mak" -> "make").
std::string RepairStem(std::string stem) {
  const size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !IsVowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z' &&
      stem[n - 1] != 'f') {
    stem.pop_back();
    return stem;
  }
  if ((n <= 3 && EndsCvc(stem)) ||
      (n == 2 && IsVowel(stem[0]) && !IsVowel(stem[1])) ||
      (n >= 3 && !IsVowel(stem[n - 2]) &&
       (stem[n - 1] == 'c' || stem[n - 1] == 'v' || stem[n - 1] == 'z' ||
        stem[n - 1] == 'u')) ||
      (n >= 3 && IsVowel(stem[n - 2]) &&
       (stem[n - 1] == 'c' || stem[n - 1] == 'v' || stem[n - 1] == 'z'))) {
    stem.push_back('e');
  }
  return stem;
}

const std::unordered_map<std::string, std::string>& Irregulars() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"is", "be"},         {"are", "be"},        {"was", "be"},
      {"were", "be"},       {"am", "be"},         {"been", "be"},
      {"being", "be"},      {"has", "have"},      {"had", "have"},
      {"having", "have"},   {"does", "do"},       {"did", "do"},
      {"done", "do"},       {"goes", "go"},       {"went", "go"},
      {"gone", "go"},       {"men", "man"},       {"women", "woman"},
      {"children", "child"}, {"people", "person"}, {"mice", "mouse"},
      {"feet", "foot"},     {"teeth", "tooth"},   {"geese", "goose"},
      {"ran", "run"},       {"sat", "sit"},       {"ate", "eat"},
      {"eaten", "eat"},     {"took", "take"},     {"taken", "take"},
      {"gave", "give"},     {"given", "give"},    {"made", "make"},
      {"rode", "ride"},     {"ridden", "ride"},   {"wrote", "write"},
      {"written", "write"}, {"sang", "sing"},     {"sung", "sing"},
      {"swam", "swim"},     {"flew", "fly"},      {"flown", "fly"},
      {"threw", "throw"},   {"thrown", "throw"},  {"caught", "catch"},
      {"bought", "buy"},    {"brought", "bring"}, {"thought", "think"},
      {"held", "hold"},     {"stood", "stand"},   {"fell", "fall"},
      {"fallen", "fall"},   {"knives", "knife"},  {"wives", "wife"},
      {"leaves", "leaf"},   {"lives", "life"},    {"wolves", "wolf"},
      {"shelves", "shelf"}, {"dice", "die"},      {"dead", "die"},
      {"lying", "lie"},     {"dying", "die"},     {"tying", "tie"},
      {"better", "good"},   {"best", "good"},     {"worse", "bad"},
      {"worst", "bad"},     {"an", "a"},          {"n't", "not"},
  };
  return *table;
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

bool IsPunctuationToken(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), IsPunct);
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& raw : SplitWhitespace(ToLower(text))) {
    size_t begin = 0, end = raw.size();
    std::vector<std::string> trailing;
    while (begin < end && IsPunct(raw[begin])) {
      out.emplace_back(1, raw[begin]);
      ++begin;
    }
    while (end > begin && IsPunct(raw[end - 1])) {
      trailing.emplace_back(1, raw[end - 1]);
      --end;
    }
    if (end > begin) out.push_back(raw.substr(begin, end - begin));
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

std::string Lemmatizer::Lemma(std::string_view token) const {
  std::string w = ToLower(token);
  if (auto it = Irregulars().find(w); it != Irregulars().end()) return it->second;
  if (w.size() <= 3 || !std::all_of(w.begin(), w.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '-';
      })) {
    return w;
  }
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "ing") && w.size() >= 5) {
    std::string stem = w.substr(0, w.size() - 3);
    if (HasVowel(stem)) return RepairStem(std::move(stem));
    return w;
  }
  if (EndsWith(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "ed") && w.size() >= 5) {
    std::string stem = w.substr(0, w.size() - 2);
    if (HasVowel(stem) && stem.back() != 'e') return RepairStem(std::move(stem));
    return w;
  }
  for (std::string_view suffix : {"sses", "xes", "zes", "ches", "shes"}) {
    if (EndsWith(w, suffix)) return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is")) return w;
  if (EndsWith(w, "s")) return w.substr(0, w.size() - 1);
  return w;
}

const Lemmatizer& DefaultLemmatizer() {
  static const Lemmatizer lemmatizer;
  return lemmatizer;
}

}  // namespace amrmeter
