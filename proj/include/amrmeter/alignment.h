#ifndef AMRMETER_ALIGNMENT_H_
#define AMRMETER_ALIGNMENT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrmeter/amr.h"
#include "amrmeter/embeddings.h"

namespace amrmeter {

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Concept variable aligned to the token range [begin, end).
struct AlignmentLink {
  std::string variable;
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const AlignmentLink&) const = default;
};

struct ConceptAlignment {
  std::vector<AlignmentLink> links;               // in instance order
  std::vector<std::string> unaligned_concepts;    // in instance order

  const AlignmentLink* Find(std::string_view variable) const;
};

// One "start-end|node+node" entry. Nodes are JAMR paths ("0.1") or variable
// names.
struct AlignmentSpan {
  size_t begin = 0;
  size_t end = 0;
  std::vector<std::string> nodes;
};

class ExternalAlignments {
 public:
  void Add(std::string case_id, Side side, std::vector<AlignmentSpan> spans);
  // nullptr if the case side has no line.
  const std::vector<AlignmentSpan>* Find(std::string_view case_id, Side side) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, Side>, std::vector<AlignmentSpan>> entries_;
};

// Parses one "caseid side start-end|node ..." line. Throws AlignmentError.
std::pair<std::pair<std::string, Side>, std::vector<AlignmentSpan>> ParseAlignmentLine(
    std::string_view line);

// Blank lines and "#" comments are skipped. Throws AlignmentError naming the
// line for malformed input.
ExternalAlignments LoadAlignments(const std::filesystem::path& path);

// Aligns concepts to tokens. Spans from `external` take precedence for every
// node they resolve; the rest go through the heuristic: exact lemma match,
// then a shared prefix of at least four characters, scanning tokens left to
// right and using each token at most once. Throws AlignmentError if an
// external span lies outside the token range.
ConceptAlignment AlignConcepts(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& lemmas,
                               const AmrGraph& graph,
                               const std::vector<AlignmentSpan>* external = nullptr);

}  // namespace amrmeter

#endif  // AMRMETER_ALIGNMENT_H_
