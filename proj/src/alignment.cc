#include "amrmeter/alignment.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "amrmeter/logging.h"
#include "amrmeter/text.h"

namespace amrmeter {
namespace {

constexpr size_t kMinPrefix = 4;

bool ParseIndex(std::string_view s, size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

size_t CommonPrefix(std::string_view a, std::string_view b) {
  size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

class Aligner {
 public:
  Aligner(const std::vector<std::string>& tokens, const std::vector<std::string>& lemmas)
      : tokens_(tokens), lemmas_(lemmas), used_(tokens.size(), false) {}

  bool Free(size_t begin, size_t end) const {
    for (size_t i = begin; i < end; ++i) {
      if (used_[i]) return false;
    }
    return true;
  }
  void Take(size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) used_[i] = true;
  }

  bool Matches(size_t i, std::string_view word) const {
    return tokens_[i] == word || (i < lemmas_.size() && lemmas_[i] == word);
  }

  // Leftmost free span equal to the lemma, either as one token or, for
  // hyphenated lemmas, as consecutive tokens.
  std::optional<std::pair<size_t, size_t>> Exact(const std::string& lemma) const {
    const auto parts = Split(lemma, '-');
    for (size_t i = 0; i < tokens_.size(); ++i) {
      if (!used_[i] && Matches(i, lemma)) return std::make_pair(i, i + 1);
      if (parts.size() > 1 && i + parts.size() <= tokens_.size() &&
          Free(i, i + parts.size())) {
        bool all = true;
        for (size_t k = 0; k < parts.size() && all; ++k) all = Matches(i + k, parts[k]);
        if (all) return std::make_pair(i, i + parts.size());
      }
    }
    return std::nullopt;
  }

  std::optional<std::pair<size_t, size_t>> Prefix(const std::string& lemma) const {
    if (lemma.size() < kMinPrefix) return std::nullopt;
    for (size_t i = 0; i < tokens_.size(); ++i) {
      if (used_[i]) continue;
      size_t p = CommonPrefix(tokens_[i], lemma);
      if (i < lemmas_.size()) p = std::max(p, CommonPrefix(lemmas_[i], lemma));
      if (p >= kMinPrefix) return std::make_pair(i, i + 1);
    }
    return std::nullopt;
  }

 private:
  const std::vector<std::string>& tokens_;
  const std::vector<std::string>& lemmas_;
  std::vector<bool> used_;
};

}  // namespace

const AlignmentLink* ConceptAlignment::Find(std::string_view variable) const {
  for (const auto& link : links) {
    if (link.variable == variable) return &link;
  }
  return nullptr;
}

void ExternalAlignments::Add(std::string case_id, Side side,
                             std::vector<AlignmentSpan> spans) {
  auto& slot = entries_[{std::move(case_id), side}];
  slot.insert(slot.end(), std::make_move_iterator(spans.begin()),
              std::make_move_iterator(spans.end()));
}

const std::vector<AlignmentSpan>* ExternalAlignments::Find(std::string_view case_id,
                                                           Side side) const {
  auto it = entries_.find({std::string(case_id), side});
  return it == entries_.end() ? nullptr : &it->second;
}

std::pair<std::pair<std::string, Side>, std::vector<AlignmentSpan>> ParseAlignmentLine(
    std::string_view line) {
  const auto fields = SplitWhitespace(line);
  if (fields.size() < 2) throw AlignmentError("expected 'caseid side span|node ...'");
  Side side;
  try {
    side = ParseSide(fields[1]);
  } catch (const EmbeddingError&) {
    throw AlignmentError("bad side '" + fields[1] + "'");
  }
  std::vector<AlignmentSpan> spans;
  for (size_t f = 2; f < fields.size(); ++f) {
    const std::string& entry = fields[f];
    const size_t bar = entry.find('|');
    const size_t dash = entry.find('-');
    if (bar == std::string::npos || dash == std::string::npos || dash > bar)
      throw AlignmentError("malformed span '" + entry + "'");
    AlignmentSpan span;
    if (!ParseIndex(std::string_view(entry).substr(0, dash), span.begin) ||
        !ParseIndex(std::string_view(entry).substr(dash + 1, bar - dash - 1), span.end) ||
        span.end <= span.begin)
      throw AlignmentError("malformed span '" + entry + "'");
    for (std::string_view node : Split(std::string_view(entry).substr(bar + 1), '+')) {
      if (node.empty()) throw AlignmentError("empty node in '" + entry + "'");
      span.nodes.emplace_back(node);
    }
    spans.push_back(std::move(span));
  }
  return {{fields[0], side}, std::move(spans)};
}

ExternalAlignments LoadAlignments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw AlignmentError("cannot read alignment file " + path.string());
  ExternalAlignments out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      auto [key, spans] = ParseAlignmentLine(line);
      out.Add(std::move(key.first), key.second, std::move(spans));
    } catch (const AlignmentError& e) {
      throw AlignmentError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

ConceptAlignment AlignConcepts(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& lemmas,
                               const AmrGraph& graph,
                               const std::vector<AlignmentSpan>* external) {
  const std::vector<ConceptNode> concepts = graph.ConceptNodes();
  std::map<std::string, std::pair<size_t, size_t>> spans;
  Aligner aligner(tokens, lemmas);

  if (external != nullptr) {
    for (const AlignmentSpan& span : *external) {
      if (span.end > tokens.size())
        throw AlignmentError("alignment span " + std::to_string(span.begin) + "-" +
                             std::to_string(span.end) + " exceeds " +
                             std::to_string(tokens.size()) + " tokens");
      for (const std::string& node : span.nodes) {
        std::optional<std::string> variable = graph.ResolveNodePath(node);
        if (!variable && graph.HasVariable(node)) variable = node;
        if (!variable) {
          Warn("alignment node '" + node + "' does not resolve; ignored");
          continue;
        }
        if (spans.try_emplace(*variable, span.begin, span.end).second)
          aligner.Take(span.begin, span.end);
      }
    }
  }
  for (const ConceptNode& c : concepts) {
    if (spans.contains(c.variable)) continue;
    if (auto found = aligner.Exact(c.lemma)) {
      spans.emplace(c.variable, *found);
      aligner.Take(found->first, found->second);
    }
  }
  for (const ConceptNode& c : concepts) {
    if (spans.contains(c.variable)) continue;
    if (auto found = aligner.Prefix(c.lemma)) {
      spans.emplace(c.variable, *found);
      aligner.Take(found->first, found->second);
    }
  }

  ConceptAlignment out;
  for (const ConceptNode& c : concepts) {
    auto it = spans.find(c.variable);
    if (it == spans.end()) {
      out.unaligned_concepts.push_back(c.variable);
    } else {
      out.links.push_back({c.variable, it->second.first, it->second.second});
    }
  }
  return out;
}

}  // namespace amrmeter
