#include "amrmeter/suite.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "amrmeter/text.h"
#include "json.hpp"

namespace amrmeter {
namespace {

using nlohmann::json;

std::string AliasKey(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return key;
}

const json* Field(const json& record, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    auto it = record.find(n);
    if (it != record.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

struct Context {
  std::optional<Dataset> dataset;
  std::optional<std::string> phenomenon;
};

std::string Describe(const json& record, size_t ordinal) {
  if (const json* id = Field(record, {"id", "pair_id", "case_id"})) {
    return id->is_string() ? id->get<std::string>() : id->dump();
  }
  return "#" + std::to_string(ordinal);
}

std::vector<std::string> StringArray(const json& value, const std::string& what) {
  if (!value.is_array()) throw SuiteError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) throw SuiteError(what + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const PhenomenonRegistry& phenomena) : phenomena_(phenomena) {}

  void AddRecord(const json& record, const Context& context) {
    const size_t ordinal = cases_.size() + 1;
    const std::string label = Describe(record, ordinal);
    try {
      cases_.push_back(Build(record, context, ordinal));
    } catch (const SuiteError& e) {
      throw SuiteError("case " + label + ": " + e.what());
    } catch (const PenmanError& e) {
      throw SuiteError("case " + label + ": " + e.what());
    } catch (const GraphError& e) {
      throw SuiteError("case " + label + ": " + e.what());
    } catch (const json::exception& e) {
      throw SuiteError("case " + label + ": " + e.what());
    }
    if (!ids_.insert(cases_.back().id).second)
      throw SuiteError("duplicate case id " + cases_.back().id);
  }

  std::vector<TestCase> Take() { return std::move(cases_); }

 private:
  TestCase Build(const json& r, const Context& context, size_t ordinal) {
    if (!r.is_object()) throw SuiteError("record is not an object");
    auto text = [&](std::initializer_list<const char*> names, const char* what) {
      const json* f = Field(r, names);
      if (f == nullptr || !f->is_string())
        throw SuiteError(std::string("missing or non-string field ") + what);
      return f->get<std::string>();
    };

    std::optional<Dataset> dataset = context.dataset;
    if (const json* f = Field(r, {"dataset", "source", "corpus"})) {
      if (!f->is_string()) throw SuiteError("dataset must be a string");
      dataset = ParseDataset(f->get<std::string>());
      if (!dataset) throw SuiteError("unknown dataset '" + f->get<std::string>() + "'");
    }
    if (!dataset) throw SuiteError("missing field dataset");

    std::optional<std::string> phenomenon_raw = context.phenomenon;
    if (const json* f = Field(r, {"phenomenon", "category", "phenomena"})) {
      if (!f->is_string()) throw SuiteError("phenomenon must be a string");
      phenomenon_raw = f->get<std::string>();
    }
    if (!phenomenon_raw) throw SuiteError("missing field phenomenon");
    std::optional<std::string> phenomenon = phenomena_.Canonicalize(*phenomenon_raw);
    if (!phenomenon) throw SuiteError("unknown phenomenon '" + *phenomenon_raw + "'");

    std::string id;
    if (const json* f = Field(r, {"id", "pair_id", "case_id"})) {
      id = f->is_string() ? f->get<std::string>() : f->dump();
    } else {
      id = std::string(DatasetName(*dataset)) + "-" + *phenomenon + "-" +
           std::to_string(ordinal);
    }
    if (id.empty()) throw SuiteError("empty id");

    std::string sa = text({"sentence_a", "sent_a", "sentence1", "sent1", "s1", "reference"},
                          "sentence_a");
    std::string sb = text({"sentence_b", "sent_b", "sentence2", "sent2", "s2", "candidate"},
                          "sentence_b");
    std::string amr_a_text = text({"amr_a", "amr1", "graph_a", "amr_ref"}, "amr_a");
    std::string amr_b_text = text({"amr_b", "amr2", "graph_b", "amr_cand"}, "amr_b");

    const json* score =
        Field(r, {"human_score", "score", "gold", "relatedness_score", "similarity"});
    if (score == nullptr || !score->is_number()) throw SuiteError("missing numeric human_score");
    const double human = score->get<double>();
    const double lo = *dataset == Dataset::kSick ? 1.0 : 0.0;
    if (!std::isfinite(human) || human < lo || human > 5.0) {
      std::ostringstream msg;
      msg << "human_score " << human << " outside [" << lo << ", 5] for "
          << DatasetName(*dataset);
      throw SuiteError(msg.str());
    }

    AmrGraph amr_a = [&] {
      try {
        return ParsePenman(amr_a_text);
      } catch (const PenmanError& e) {
        throw SuiteError(std::string("amr_a: ") + e.what());
      } catch (const GraphError& e) {
        throw SuiteError(std::string("amr_a: ") + e.what());
      }
    }();
    AmrGraph amr_b = [&] {
      try {
        return ParsePenman(amr_b_text);
      } catch (const PenmanError& e) {
        throw SuiteError(std::string("amr_b: ") + e.what());
      } catch (const GraphError& e) {
        throw SuiteError(std::string("amr_b: ") + e.what());
      }
    }();

    TestCase tc = MakeTestCase(std::move(id), *dataset, std::move(*phenomenon), std::move(sa),
                               std::move(sb), std::move(amr_a), std::move(amr_b), human);
    OverrideTokens(r, "tokens_a", "lemmas_a", tc.tokens_a, tc.lemmas_a);
    OverrideTokens(r, "tokens_b", "lemmas_b", tc.tokens_b, tc.lemmas_b);
    return tc;
  }

  static void OverrideTokens(const json& r, const char* tokens_key, const char* lemmas_key,
                             std::vector<std::string>& tokens,
                             std::vector<std::string>& lemmas) {
    if (const json* t = Field(r, {tokens_key})) {
      tokens = StringArray(*t, tokens_key);
      for (auto& tok : tokens) tok = ToLower(tok);
      lemmas.clear();
      for (const auto& tok : tokens) lemmas.push_back(DefaultLemmatizer().Lemma(tok));
    }
    if (const json* l = Field(r, {lemmas_key})) {
      lemmas = StringArray(*l, lemmas_key);
      for (auto& lem : lemmas) lem = ToLower(lem);
      if (lemmas.size() != tokens.size())
        throw SuiteError(std::string(lemmas_key) + " has " + std::to_string(lemmas.size()) +
                         " entries for " + std::to_string(tokens.size()) + " tokens");
    }
  }

  const PhenomenonRegistry& phenomena_;
  std::vector<TestCase> cases_;
  std::set<std::string> ids_;
};

bool LooksLikeCase(const json& value) {
  return value.is_object() && Field(value, {"amr_a", "amr1", "graph_a", "amr_ref"}) != nullptr;
}

void AddGrouped(SuiteBuilder& builder, const json& node, Context context,
                const PhenomenonRegistry& phenomena) {
  if (node.is_array()) {
    for (const auto& item : node) {
      if (LooksLikeCase(item)) {
        builder.AddRecord(item, context);
      } else {
        AddGrouped(builder, item, context, phenomena);
      }
    }
    return;
  }
  if (!node.is_object()) throw SuiteError("unexpected JSON value in grouped suite");
  if (LooksLikeCase(node)) {
    builder.AddRecord(node, context);
    return;
  }
  for (const auto& [key, value] : node.items()) {
    Context inner = context;
    if (auto d = ParseDataset(key)) {
      inner.dataset = d;
    } else if (phenomena.Canonicalize(key)) {
      inner.phenomenon = key;
    } else if (!value.is_array() && !value.is_object()) {
      continue;  // metadata such as "version"
    } else {
      throw SuiteError("unknown group key '" + key + "'");
    }
    AddGrouped(builder, value, inner, phenomena);
  }
}

}  // namespace

PhenomenonRegistry::PhenomenonRegistry() {
  for (const char* name : {"Antonymy", "Article", "Aspect", "CoHyponymy", "Hyponymy",
                           "Negation", "Omission", "PartialSynonymy", "Passive",
                           "SemanticRoles", "SubordinateClauses"}) {
    Add(name);
  }
  const std::pair<const char*, const char*> aliases[] = {
      {"ant", "Antonymy"},          {"anto", "Antonymy"},
      {"antonym", "Antonymy"},      {"art", "Article"},
      {"articles", "Article"},      {"asp", "Aspect"},
      {"cohyp", "CoHyponymy"},      {"cohypo", "CoHyponymy"},
      {"cohyponym", "CoHyponymy"},  {"hyp", "Hyponymy"},
      {"hypo", "Hyponymy"},         {"hyponym", "Hyponymy"},
      {"neg", "Negation"},          {"om", "Omission"},
      {"omit", "Omission"},         {"partsyn", "PartialSynonymy"},
      {"syn", "PartialSynonymy"},   {"synonymy", "PartialSynonymy"},
      {"partialsyn", "PartialSynonymy"}, {"pass", "Passive"},
      {"passivevoice", "Passive"},  {"srl", "SemanticRoles"},
      {"semroles", "SemanticRoles"}, {"semanticrole", "SemanticRoles"},
      {"subcl", "SubordinateClauses"}, {"subordinateclause", "SubordinateClauses"},
      {"subclause", "SubordinateClauses"}, {"subclauses", "SubordinateClauses"},
  };
  for (const auto& [alias, name] : aliases) aliases_[alias] = name;
}

void PhenomenonRegistry::Add(std::string_view canonical_name) {
  const std::string key = AliasKey(canonical_name);
  if (key.empty() || aliases_.contains(key)) return;
  names_.emplace_back(canonical_name);
  aliases_[key] = std::string(canonical_name);
}

std::optional<std::string> PhenomenonRegistry::Canonicalize(std::string_view name) const {
  auto it = aliases_.find(AliasKey(name));
  if (it == aliases_.end()) return std::nullopt;
  return it->second;
}

std::optional<Dataset> ParseDataset(std::string_view name) {
  const std::string key = AliasKey(name);
  if (key == "sick") return Dataset::kSick;
  if (key == "sts" || key == "stsb" || key == "stsbenchmark") return Dataset::kSts;
  return std::nullopt;
}

std::string_view DatasetName(Dataset dataset) {
  return dataset == Dataset::kSick ? "SICK" : "STS";
}

TestCase MakeTestCase(std::string id, Dataset dataset, std::string phenomenon,
                      std::string sentence_a, std::string sentence_b, AmrGraph amr_a,
                      AmrGraph amr_b, double human_score) {
  std::vector<std::string> ta = Tokenize(sentence_a);
  std::vector<std::string> tb = Tokenize(sentence_b);
  std::vector<std::string> la, lb;
  for (const auto& t : ta) la.push_back(DefaultLemmatizer().Lemma(t));
  for (const auto& t : tb) lb.push_back(DefaultLemmatizer().Lemma(t));
  return TestCase{std::move(id),         dataset,         std::move(phenomenon),
                  std::move(sentence_a), std::move(sentence_b), std::move(amr_a),
                  std::move(amr_b),      human_score,     std::move(ta),
                  std::move(tb),         std::move(la),   std::move(lb)};
}

std::vector<TestCase> ParseSuite(std::string_view text, const PhenomenonRegistry& phenomena) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw SuiteError("suite is empty");
  SuiteBuilder builder(phenomena);

  // A single JSON document is either one case record or the grouped format.
  json whole = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (!whole.is_discarded() && !LooksLikeCase(whole)) {
    AddGrouped(builder, whole, {}, phenomena);
  } else {
    size_t line_no = 0, start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      std::string_view line =
          text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
        json record = json::parse(line.begin(), line.end(), nullptr, false);
        if (record.is_discarded())
          throw SuiteError("line " + std::to_string(line_no) + ": invalid JSON");
        builder.AddRecord(record, {});
      }
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }
  std::vector<TestCase> cases = builder.Take();
  if (cases.empty()) throw SuiteError("suite contains no cases");
  return cases;
}

std::vector<TestCase> LoadSuite(const std::filesystem::path& path,
                                const PhenomenonRegistry& phenomena) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SuiteError("cannot read suite " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseSuite(buffer.str(), phenomena);
  } catch (const SuiteError& e) {
    throw SuiteError(path.string() + ": " + e.what());
  }
}

GroupStatistics DescribeScores(std::vector<double> scores) {
  GroupStatistics s;
  s.count = scores.size();
  if (scores.empty()) return s;
  double sum = 0.0;
  for (double x : scores) sum += x;
  s.mean = sum / static_cast<double>(s.count);
  std::sort(scores.begin(), scores.end());
  const size_t mid = s.count / 2;
  s.median = s.count % 2 == 1 ? scores[mid] : 0.5 * (scores[mid - 1] + scores[mid]);
  if (s.count > 1) {
    double ss = 0.0;
    for (double x : scores) ss += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.std_error = s.std_dev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

size_t SuiteStatistics::Count(Dataset dataset, std::string_view phenomenon) const {
  auto d = groups.find(dataset);
  if (d == groups.end()) return 0;
  auto p = d->second.find(std::string(phenomenon));
  return p == d->second.end() ? 0 : p->second.count;
}

SuiteStatistics ValidateSuite(const std::vector<TestCase>& cases) {
  SuiteStatistics stats;
  stats.total = cases.size();
  std::map<Dataset, std::map<std::string, std::vector<double>>> grouped;
  std::map<Dataset, std::vector<double>> pooled;
  for (const auto& c : cases) {
    grouped[c.dataset][c.phenomenon].push_back(c.human_score);
    pooled[c.dataset].push_back(c.human_score);
  }
  for (auto& [dataset, by_phen] : grouped) {
    for (auto& [phen, scores] : by_phen)
      stats.groups[dataset][phen] = DescribeScores(std::move(scores));
  }
  for (auto& [dataset, scores] : pooled) stats.datasets[dataset] = DescribeScores(std::move(scores));
  return stats;
}

}  // namespace amrmeter
