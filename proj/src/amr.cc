#include "amrmeter/amr.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace amrmeter {
namespace {

constexpr std::string_view kInverseSuffix = "-of";

// Roles ending in "-of" that are not inverses.
bool IsNonInverseOfRole(std::string_view role) {
  return role == ":consist-of" || role == ":prep-out-of" ||
         role == ":prep-on-behalf-of";
}

bool LooksLikeVariable(std::string_view symbol) {
  // Letters followed by digits ("xv3", "b2"). Undefined symbols of this shape
  // are dangling references rather than constants.
  size_t i = 0;
  while (i < symbol.size() && std::islower(static_cast<unsigned char>(symbol[i])))
    ++i;
  if (i == 0 || i == symbol.size()) return false;
  for (size_t j = i; j < symbol.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(symbol[j]))) return false;
  }
  return true;
}

}  // namespace

ConceptNode SplitConcept(std::string variable, std::string concept_label) {
  ConceptNode node;
  node.variable = std::move(variable);
  node.concept_label = std::move(concept_label);
  const std::string& c = node.concept_label;
  const size_t n = c.size();
  if (n >= 4 && c[n - 3] == '-' &&
      std::isdigit(static_cast<unsigned char>(c[n - 2])) &&
      std::isdigit(static_cast<unsigned char>(c[n - 1]))) {
    node.lemma = c.substr(0, n - 3);
    node.sense = (c[n - 2] - '0') * 10 + (c[n - 1] - '0');
  } else {
    node.lemma = c;
  }
  return node;
}

bool IsInverseRole(std::string_view role) {
  return role.size() > kInverseSuffix.size() + 1 &&
         role.ends_with(kInverseSuffix) && !IsNonInverseOfRole(role);
}

std::string DirectRole(std::string_view role) {
  if (!IsInverseRole(role)) return std::string(role);
  return std::string(role.substr(0, role.size() - kInverseSuffix.size()));
}

std::string InvertRole(std::string_view role) {
  if (IsInverseRole(role)) return DirectRole(role);
  return std::string(role) + std::string(kInverseSuffix);
}

// ---------------------------------------------------------------------------
// AmrGraph

AmrGraph AmrGraph::Create(std::string root, std::vector<Instance> instances,
                          std::vector<Attribute> attributes,
                          std::vector<Relation> relations) {
  AmrGraph g;
  g.root_ = std::move(root);
  g.instances_ = std::move(instances);
  g.attributes_ = std::move(attributes);
  g.relations_ = std::move(relations);
  for (size_t i = 0; i < g.relations_.size(); ++i)
    g.edge_order_.push_back({TripleKind::kRelation, i});
  for (size_t i = 0; i < g.attributes_.size(); ++i)
    g.edge_order_.push_back({TripleKind::kAttribute, i});
  g.Validate();
  return g;
}

void AmrGraph::Validate() const {
  if (instances_.empty()) throw GraphError("graph has no instances");
  std::unordered_set<std::string_view> vars;
  for (const auto& inst : instances_) {
    if (inst.variable.empty()) throw GraphError("empty variable name");
    if (inst.concept_label.empty())
      throw GraphError("variable '" + inst.variable + "' has an empty concept");
    if (!vars.insert(inst.variable).second)
      throw GraphError("duplicate variable definition '" + inst.variable + "'");
  }
  if (!vars.contains(root_))
    throw GraphError("root '" + root_ + "' is not a defined variable");
  auto check_role = [](const std::string& role) {
    if (role.size() < 2 || role[0] != ':')
      throw GraphError("role '" + role + "' does not start with ':'");
  };
  for (const auto& a : attributes_) {
    check_role(a.role);
    if (!vars.contains(a.source))
      throw GraphError("dangling variable reference '" + a.source + "'");
    if (a.value.empty()) throw GraphError("empty attribute value");
  }
  for (const auto& r : relations_) {
    check_role(r.role);
    if (!vars.contains(r.source))
      throw GraphError("dangling variable reference '" + r.source + "'");
    if (!vars.contains(r.target))
      throw GraphError("dangling variable reference '" + r.target + "'");
  }

  // Connectivity over the undirected view.
  std::unordered_map<std::string_view, std::vector<std::string_view>> adj;
  for (const auto& r : relations_) {
    adj[r.source].push_back(r.target);
    adj[r.target].push_back(r.source);
  }
  std::unordered_set<std::string_view> seen{root_};
  std::vector<std::string_view> stack{root_};
  while (!stack.empty()) {
    std::string_view v = stack.back();
    stack.pop_back();
    for (std::string_view w : adj[v]) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  if (seen.size() != vars.size()) {
    for (const auto& inst : instances_) {
      if (!seen.contains(inst.variable))
        throw GraphError("disconnected graph: '" + inst.variable +
                         "' is not reachable from root '" + root_ + "'");
    }
  }
}

bool AmrGraph::HasVariable(std::string_view variable) const {
  return VariableIndex(variable).has_value();
}

std::optional<size_t> AmrGraph::VariableIndex(std::string_view variable) const {
  for (size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].variable == variable) return i;
  }
  return std::nullopt;
}

const std::string& AmrGraph::ConceptOf(std::string_view variable) const {
  auto idx = VariableIndex(variable);
  if (!idx) throw GraphError("unknown variable '" + std::string(variable) + "'");
  return instances_[*idx].concept_label;
}

std::vector<ConceptNode> AmrGraph::ConceptNodes() const {
  std::vector<ConceptNode> nodes;
  nodes.reserve(instances_.size());
  for (const auto& inst : instances_)
    nodes.push_back(SplitConcept(inst.variable, inst.concept_label));
  return nodes;
}

std::vector<Triple> AmrGraph::Triples(bool include_root) const {
  std::vector<Triple> out;
  out.reserve(instances_.size() + attributes_.size() + relations_.size() + 1);
  for (const auto& i : instances_)
    out.push_back({TripleKind::kInstance, i.variable,
                   std::string(kInstanceRole), i.concept_label});
  for (const auto& a : attributes_)
    out.push_back({TripleKind::kAttribute, a.source, a.role, a.value});
  if (include_root)
    out.push_back({TripleKind::kAttribute, root_, std::string(kTopRole),
                   std::string(kTopValue)});
  for (const auto& r : relations_)
    out.push_back({TripleKind::kRelation, r.source, r.role, r.target});
  return out;
}

std::optional<std::string> AmrGraph::ResolveNodePath(std::string_view path) const {
  std::vector<size_t> steps;
  size_t pos = 0;
  while (pos <= path.size()) {
    size_t dot = path.find('.', pos);
    std::string_view part =
        path.substr(pos, dot == std::string_view::npos ? std::string_view::npos
                                                       : dot - pos);
    if (part.empty()) return std::nullopt;
    size_t value = 0;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      value = value * 10 + static_cast<size_t>(c - '0');
    }
    steps.push_back(value);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (steps.empty() || steps[0] != 0) return std::nullopt;
  std::string current = root_;
  for (size_t s = 1; s < steps.size(); ++s) {
    size_t child = 0;
    bool found = false;
    for (const EdgeRef& e : edge_order_) {
      const std::string& source = e.kind == TripleKind::kRelation
                                      ? relations_[e.index].source
                                      : attributes_[e.index].source;
      if (source != current) continue;
      if (child++ != steps[s]) continue;
      if (e.kind != TripleKind::kRelation) return std::nullopt;
      current = relations_[e.index].target;
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return current;
}

AmrGraph AmrGraph::Canonicalized() const {
  AmrGraph g = *this;
  for (auto& r : g.relations_) {
    if (IsInverseRole(r.role)) {
      r.role = DirectRole(r.role);
      std::swap(r.source, r.target);
    }
  }
  return g;
}

AmrGraph AmrGraph::RenameVariables(std::span<const std::string> new_names) const {
  if (new_names.size() != instances_.size())
    throw GraphError("rename list size does not match variable count");
  std::unordered_map<std::string, std::string> map;
  for (size_t i = 0; i < instances_.size(); ++i)
    map[instances_[i].variable] = new_names[i];
  AmrGraph g = *this;
  g.root_ = map.at(root_);
  for (auto& i : g.instances_) i.variable = map.at(i.variable);
  for (auto& a : g.attributes_) a.source = map.at(a.source);
  for (auto& r : g.relations_) {
    r.source = map.at(r.source);
    r.target = map.at(r.target);
  }
  g.Validate();
  return g;
}

// ---------------------------------------------------------------------------
// Parsing

class PenmanParser {
 public:
  explicit PenmanParser(std::string_view text) : text_(text) {}

  AmrGraph Parse() {
    Lex();
    if (tokens_.empty()) Fail("empty input", text_.size());
    size_t pos = 0;
    std::string root = ParseNode(pos);
    if (pos != tokens_.size())
      Fail("unexpected content after the top-level node", tokens_[pos].offset);
    return Resolve(std::move(root));
  }

 private:
  enum class Kind { kOpen, kClose, kSlash, kRole, kString, kSymbol };
  struct Token {
    Kind kind;
    std::string text;
    size_t offset;
  };
  struct PendingEdge {
    std::string source;
    std::string role;
    std::string value;
    Kind value_kind;  // kOpen for inline nodes, else kString / kSymbol
    size_t offset;
  };

  [[noreturn]] void Fail(const std::string& message, size_t offset) const {
    size_t line = 1, column = 1;
    for (size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "penman syntax error at line " << line << ", column " << column
       << ": " << message;
    throw PenmanError(os.str(), offset, line, column);
  }

  static bool IsDelimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
           c == ')' || c == '"';
  }

  static std::string StripAlignment(std::string s) {
    size_t tilde = s.find('~');
    if (tilde != std::string::npos && tilde > 0) s.resize(tilde);
    return s;
  }

  void Lex() {
    size_t i = 0;
    bool line_start = true;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '\n') {
        line_start = true;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#' && line_start) {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      line_start = false;
      const size_t start = i;
      if (c == '(') {
        tokens_.push_back({Kind::kOpen, "(", start});
        ++i;
      } else if (c == ')') {
        tokens_.push_back({Kind::kClose, ")", start});
        ++i;
      } else if (c == '/') {
        tokens_.push_back({Kind::kSlash, "/", start});
        ++i;
      } else if (c == ':') {
        ++i;
        while (i < text_.size() && !IsDelimiter(text_[i])) ++i;
        std::string role = StripAlignment(std::string(text_.substr(start, i - start)));
        if (role.size() < 2) Fail("empty role name", start);
        tokens_.push_back({Kind::kRole, std::move(role), start});
      } else if (c == '"') {
        ++i;
        bool closed = false;
        while (i < text_.size()) {
          if (text_[i] == '\\' && i + 1 < text_.size()) {
            i += 2;
            continue;
          }
          if (text_[i] == '"') {
            closed = true;
            ++i;
            break;
          }
          ++i;
        }
        if (!closed) Fail("unterminated string", start);
        std::string s(text_.substr(start, i - start));
        // Alignment suffix after a quoted string.
        if (i < text_.size() && text_[i] == '~') {
          while (i < text_.size() && !IsDelimiter(text_[i])) ++i;
        }
        tokens_.push_back({Kind::kString, std::move(s), start});
      } else {
        while (i < text_.size() && !IsDelimiter(text_[i]) && text_[i] != '/')
          ++i;
        tokens_.push_back({Kind::kSymbol,
                           StripAlignment(std::string(text_.substr(start, i - start))),
                           start});
      }
    }
  }

  const Token& Expect(size_t& pos, Kind kind, const char* what) {
    if (pos >= tokens_.size()) Fail(std::string("expected ") + what +
                                        " but reached end of input",
                                    text_.size());
    const Token& t = tokens_[pos];
    if (t.kind != kind) Fail(std::string("expected ") + what + ", found '" +
                                 t.text + "'",
                             t.offset);
    ++pos;
    return t;
  }

  std::string ParseNode(size_t& pos) {
    Expect(pos, Kind::kOpen, "'('");
    const Token& var = Expect(pos, Kind::kSymbol, "variable");
    Expect(pos, Kind::kSlash, "'/'");
    const Token& concept_tok = Expect(pos, Kind::kSymbol, "concept");
    if (!defined_.emplace(var.text, var.offset).second)
      throw GraphError("duplicate variable definition '" + var.text +
                       "' at offset " + std::to_string(var.offset));
    instances_.push_back({var.text, concept_tok.text});
    std::string variable = var.text;
    while (true) {
      if (pos >= tokens_.size()) Fail("missing ')'", text_.size());
      const Token& t = tokens_[pos];
      if (t.kind == Kind::kClose) {
        ++pos;
        break;
      }
      if (t.kind != Kind::kRole)
        Fail("expected role or ')', found '" + t.text + "'", t.offset);
      std::string role = t.text;
      ++pos;
      if (pos >= tokens_.size()) Fail("missing value for role " + role, text_.size());
      const Token& v = tokens_[pos];
      switch (v.kind) {
        case Kind::kOpen: {
          size_t offset = v.offset;
          std::string child = ParseNode(pos);
          edges_.push_back({variable, role, std::move(child), Kind::kOpen, offset});
          break;
        }
        case Kind::kString:
        case Kind::kSymbol:
          edges_.push_back({variable, role, v.text, v.kind, v.offset});
          ++pos;
          break;
        default:
          Fail("expected value for role " + role + ", found '" + v.text + "'",
               v.offset);
      }
    }
    return variable;
  }

  AmrGraph Resolve(std::string root) {
    AmrGraph g;
    g.root_ = std::move(root);
    g.instances_ = std::move(instances_);
    for (auto& e : edges_) {
      bool is_relation = e.value_kind == Kind::kOpen ||
                         (e.value_kind == Kind::kSymbol && defined_.contains(e.value));
      if (is_relation) {
        g.edge_order_.push_back({TripleKind::kRelation, g.relations_.size()});
        g.relations_.push_back({e.source, e.role, e.value});
      } else {
        if (e.value_kind == Kind::kSymbol && LooksLikeVariable(e.value))
          throw GraphError("dangling variable reference '" + e.value +
                           "' at offset " + std::to_string(e.offset));
        g.edge_order_.push_back({TripleKind::kAttribute, g.attributes_.size()});
        g.attributes_.push_back({e.source, e.role, e.value});
      }
    }
    g.Validate();
    return g;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::map<std::string, size_t> defined_;
  std::vector<Instance> instances_;
  std::vector<PendingEdge> edges_;
};

AmrGraph ParsePenman(std::string_view text) { return PenmanParser(text).Parse(); }

// ---------------------------------------------------------------------------
// Serialization

namespace {

class PenmanWriter {
 public:
  explicit PenmanWriter(const AmrGraph& g)
      : g_(g), relation_done_(g.relations().size(), false) {
    // Variables reachable from the root along edges as written.
    std::vector<std::string> stack = {g.root()};
    reachable_.insert(g.root());
    while (!stack.empty()) {
      const std::string v = stack.back();
      stack.pop_back();
      for (const auto& r : g.relations()) {
        if (r.source == v && reachable_.insert(r.target).second) stack.push_back(r.target);
      }
    }
  }

  std::string Write() {
    WriteNode(g_.root(), 0);
    return out_.str();
  }

 private:
  void Indent(int depth) {
    out_ << "\n" << std::string(static_cast<size_t>(depth) * 4, ' ');
  }

  void WriteNode(const std::string& var, int depth) {
    visited_.insert(var);
    out_ << "(" << var << " / " << g_.ConceptOf(var);
    auto rels = g_.relations();
    // Outgoing edges in written order: relations, then attributes.
    for (size_t i = 0; i < rels.size(); ++i) {
      if (relation_done_[i] || rels[i].source != var) continue;
      relation_done_[i] = true;
      Indent(depth + 1);
      out_ << rels[i].role << " ";
      if (visited_.contains(rels[i].target)) {
        out_ << rels[i].target;
      } else {
        WriteNode(rels[i].target, depth + 1);
      }
    }
    for (const auto& a : g_.attributes()) {
      if (a.source != var) continue;
      Indent(depth + 1);
      out_ << a.role << " " << a.value;
    }
    // Incoming edges from nodes the forward walk cannot reach become
    // inverse roles.
    for (size_t i = 0; i < rels.size(); ++i) {
      if (relation_done_[i] || rels[i].target != var ||
          visited_.contains(rels[i].source) || reachable_.contains(rels[i].source))
        continue;
      relation_done_[i] = true;
      Indent(depth + 1);
      out_ << InvertRole(rels[i].role) << " ";
      WriteNode(rels[i].source, depth + 1);
    }
    out_ << ")";
  }

  const AmrGraph& g_;
  std::vector<bool> relation_done_;
  std::set<std::string> visited_;
  std::set<std::string> reachable_;
  std::ostringstream out_;
};

}  // namespace

std::string SerializePenman(const AmrGraph& graph) {
  return PenmanWriter(graph).Write();
}

}  // namespace amrmeter
