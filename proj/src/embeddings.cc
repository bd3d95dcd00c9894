#include "amrmeter/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amrmeter/logging.h"
#include "amrmeter/text.h"
#include "json.hpp"

namespace amrmeter {
namespace {

bool ParseDouble(std::string_view s, double* out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

bool IsUnsignedInteger(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

void StaticEmbeddingTable::Add(std::string word, Vector vector) {
  if (vector.empty()) throw EmbeddingError("empty vector for '" + word + "'");
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw EmbeddingError("dimension mismatch for '" + word + "': expected " +
                         std::to_string(dimension_) + ", got " +
                         std::to_string(vector.size()));
  }
  const double norm = Norm(vector);
  auto [it, inserted] = entries_.try_emplace(std::move(word));
  if (!inserted) norm_sum_ -= Norm(it->second);
  it->second = std::move(vector);
  norm_sum_ += norm;
}

bool StaticEmbeddingTable::Contains(std::string_view word) const {
  return Find(word) != nullptr;
}

const Vector* StaticEmbeddingTable::Find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

double StaticEmbeddingTable::mean_norm() const {
  return entries_.empty() ? 0.0 : norm_sum_ / static_cast<double>(entries_.size());
}

StaticEmbeddingTable LoadStaticTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmbeddingError("cannot read embedding file " + path.string());
  StaticEmbeddingTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2 && IsUnsignedInteger(fields[0]) &&
        IsUnsignedInteger(fields[1])) {
      continue;  // word2vec header
    }
    if (fields.size() < 2) {
      throw EmbeddingError(path.string() + ":" + std::to_string(line_no) +
                           ": expected a word followed by values");
    }
    Vector v(fields.size() - 1);
    for (size_t i = 1; i < fields.size(); ++i) {
      if (!ParseDouble(fields[i], &v[i - 1])) {
        throw EmbeddingError(path.string() + ":" + std::to_string(line_no) +
                             ": bad number '" + fields[i] + "'");
      }
    }
    if (table.Contains(fields[0])) {
      Warn("duplicate embedding for '" + fields[0] + "' at " + path.string() +
           ":" + std::to_string(line_no) + "; keeping the last entry");
    }
    try {
      table.Add(fields[0], std::move(v));
    } catch (const EmbeddingError& e) {
      throw EmbeddingError(path.string() + ":" + std::to_string(line_no) + ": " +
                           e.what());
    }
  }
  if (table.size() == 0) throw EmbeddingError("empty embedding file " + path.string());
  return table;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kExact:
      return "exact";
    case Provenance::kLemmaFallback:
      return "lemma-fallback";
    case Provenance::kOovZero:
      return "oov-zero";
  }
  return "unknown";
}

TokenVector Lookup(const StaticEmbeddingTable& table, std::string_view token,
                   std::string_view lemma) {
  TokenVector out{std::string(token), std::string(lemma), {}, Provenance::kOovZero};
  if (const Vector* v = table.Find(token)) {
    out.vector = *v;
    out.provenance = Provenance::kExact;
  } else if (const Vector* w = table.Find(lemma)) {
    out.vector = *w;
    out.provenance = Provenance::kLemmaFallback;
  } else {
    out.vector.assign(table.dimension(), 0.0);
  }
  // A stored all-zero vector is indistinguishable from an unknown token.
  if (out.provenance != Provenance::kOovZero && Norm(out.vector) == 0.0)
    out.provenance = Provenance::kOovZero;
  return out;
}

std::string_view SideName(Side side) { return side == Side::kA ? "A" : "B"; }

Side ParseSide(std::string_view name) {
  if (name == "A" || name == "a") return Side::kA;
  if (name == "B" || name == "b") return Side::kB;
  throw EmbeddingError("unknown side '" + std::string(name) + "'");
}

void ContextualEmbeddingStore::Add(std::string case_id, Side side, Sentence sentence) {
  if (sentence.tokens.size() != sentence.vectors.size()) {
    throw EmbeddingError("case " + case_id + " side " + std::string(SideName(side)) +
                         ": " + std::to_string(sentence.tokens.size()) +
                         " tokens but " + std::to_string(sentence.vectors.size()) +
                         " vectors");
  }
  for (const Vector& row : sentence.vectors) {
    if (dimension_ == 0) dimension_ = row.size();
    if (row.size() != dimension_ || row.empty()) {
      throw EmbeddingError("case " + case_id + " side " +
                           std::string(SideName(side)) + ": vector dimension " +
                           std::to_string(row.size()) + ", store dimension " +
                           std::to_string(dimension_));
    }
  }
  sentences_[{std::move(case_id), side}] = std::move(sentence);
}

const ContextualEmbeddingStore::Sentence* ContextualEmbeddingStore::Find(
    std::string_view case_id, Side side) const {
  auto it = sentences_.find({std::string(case_id), side});
  return it == sentences_.end() ? nullptr : &it->second;
}

ContextualEmbeddingStore LoadContextualStore(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmbeddingError("cannot read contextual store " + path.string());
  ContextualEmbeddingStore store;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw EmbeddingError(where + ": " + e.what());
    }
    if (record.is_object() && record.value("type", "") == "manifest") {
      try {
        StoreManifest m;
        m.model = record.value("model", "");
        m.layer = record.value("layer", -1);
        m.pooling = record.value("pooling", "");
        m.dim = record.at("dim").get<size_t>();
        store.set_manifest(std::move(m));
      } catch (const nlohmann::json::exception& e) {
        throw EmbeddingError(where + ": manifest: " + e.what());
      }
      continue;
    }
    if (!record.is_object() || !record.contains("id")) continue;
    try {
      std::string id = record.at("id").is_string()
                           ? record.at("id").get<std::string>()
                           : record.at("id").dump();
      Side side = ParseSide(record.at("side").get<std::string>());
      ContextualEmbeddingStore::Sentence s;
      s.tokens = record.at("tokens").get<std::vector<std::string>>();
      s.vectors = record.at("vectors").get<std::vector<Vector>>();
      if (record.contains("dim")) {
        size_t dim = record.at("dim").get<size_t>();
        for (const Vector& row : s.vectors) {
          if (row.size() != dim)
            throw EmbeddingError("row length " + std::to_string(row.size()) +
                                 " does not match dim " + std::to_string(dim));
        }
      }
      store.Add(std::move(id), side, std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw EmbeddingError(where + ": " + e.what());
    } catch (const EmbeddingError& e) {
      throw EmbeddingError(where + ": " + e.what());
    }
  }
  if (store.manifest() && store.size() > 0 && store.manifest()->dim != store.dimension()) {
    throw EmbeddingError(path.string() + ": manifest dim " +
                         std::to_string(store.manifest()->dim) + " but rows have dimension " +
                         std::to_string(store.dimension()));
  }
  return store;
}

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw EmbeddingError("cosine of vectors with dimensions " +
                         std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  double c = dot / std::sqrt(nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

Vector MeanVector(std::span<const Vector> rows) {
  if (rows.empty()) return {};
  Vector mean(rows.front().size(), 0.0);
  for (const Vector& r : rows) {
    for (size_t i = 0; i < mean.size(); ++i) mean[i] += r[i];
  }
  for (double& x : mean) x /= static_cast<double>(rows.size());
  return mean;
}

}  // namespace amrmeter
