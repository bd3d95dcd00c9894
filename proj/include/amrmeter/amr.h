#ifndef AMRMETER_AMR_H_
#define AMRMETER_AMR_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amrmeter {

// Syntax errors carry the byte offset into the input plus a 1-based line and
// column for messages.
class PenmanError : public std::runtime_error {
 public:
  PenmanError(const std::string& what, size_t offset, size_t line,
              size_t column)
      : std::runtime_error(what), offset_(offset), line_(line),
        column_(column) {}
  size_t offset() const { return offset_; }
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t offset_;
  size_t line_;
  size_t column_;
};

// Structural invariant violations: duplicate or dangling variables,
// disconnected graphs, malformed roles.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string variable;
  std::string concept_label;
  bool operator==(const Instance&) const = default;
};

struct Attribute {
  std::string source;
  std::string role;   // ":polarity"
  std::string value;  // stored verbatim, quotes included
  bool operator==(const Attribute&) const = default;
};

struct Relation {
  std::string source;
  std::string role;  // as written, possibly inverse (":ARG0-of")
  std::string target;
  bool operator==(const Relation&) const = default;
};

enum class TripleKind { kInstance = 0, kAttribute = 1, kRelation = 2 };

inline constexpr std::string_view kInstanceRole = ":instance";
inline constexpr std::string_view kTopRole = ":TOP";
inline constexpr std::string_view kTopValue = "top";

struct Triple {
  TripleKind kind;
  std::string source;
  std::string role;
  std::string target;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

// A concept node with its PropBank-style sense split off: "pull-up-07" has
// lemma "pull-up" and sense 7. Only a trailing "-" plus exactly two digits
// counts as a sense.
struct ConceptNode {
  std::string variable;
  std::string concept_label;
  std::string lemma;
  std::optional<int> sense;
};

ConceptNode SplitConcept(std::string variable, std::string concept_label);

// True for roles such as ":ARG0-of" that read against the edge direction.
// ":consist-of" and the two multiword prepositions are ordinary roles.
bool IsInverseRole(std::string_view role);
// ":ARG0-of" -> ":ARG0". Returns the role unchanged if it is not inverse.
std::string DirectRole(std::string_view role);
// ":ARG0" -> ":ARG0-of", ":ARG0-of" -> ":ARG0".
std::string InvertRole(std::string_view role);

// Rooted, connected AMR graph. Immutable after construction; every
// constructor path validates the invariants and throws GraphError.
class AmrGraph {
 public:
  // Builds a graph from parts. Edge order for node paths is relations first,
  // then attributes, per source node.
  static AmrGraph Create(std::string root, std::vector<Instance> instances,
                         std::vector<Attribute> attributes,
                         std::vector<Relation> relations);

  const std::string& root() const { return root_; }
  std::span<const Instance> instances() const { return instances_; }
  std::span<const Attribute> attributes() const { return attributes_; }
  std::span<const Relation> relations() const { return relations_; }

  size_t variable_count() const { return instances_.size(); }
  bool HasVariable(std::string_view variable) const;
  // Index into instances(), or nullopt.
  std::optional<size_t> VariableIndex(std::string_view variable) const;
  const std::string& ConceptOf(std::string_view variable) const;

  std::vector<ConceptNode> ConceptNodes() const;

  // Instances, then attributes, then relations, each in parse order. With
  // `include_root` an extra (root, ":TOP", "top") attribute triple follows
  // the attributes.
  std::vector<Triple> Triples(bool include_root) const;

  // Resolves a JAMR-style node path ("0", "0.1", "0.1.0") against the edge
  // order as written. Returns nullopt for paths that end on a constant or do
  // not exist.
  std::optional<std::string> ResolveNodePath(std::string_view path) const;

  // Copy of this graph with every inverse relation flipped to its direct
  // form.
  AmrGraph Canonicalized() const;

  // Copy with variables renamed through `rename` (old -> new, by instance
  // index). Used to check name-invariance of metrics.
  AmrGraph RenameVariables(std::span<const std::string> new_names) const;

 private:
  friend class PenmanParser;
  struct EdgeRef {
    TripleKind kind;  // kAttribute or kRelation
    size_t index;
  };

  AmrGraph() = default;
  void Validate() const;

  std::string root_;
  std::vector<Instance> instances_;
  std::vector<Attribute> attributes_;
  std::vector<Relation> relations_;
  std::vector<EdgeRef> edge_order_;
};

// Parses one Penman expression. "#" comment lines are skipped; ISI-style
// alignment suffixes ("~e.3") are dropped.
AmrGraph ParsePenman(std::string_view text);

// Indented Penman serialization. Each variable is defined once; later
// occurrences are references.
std::string SerializePenman(const AmrGraph& graph);

}  // namespace amrmeter

#endif  // AMRMETER_AMR_H_
