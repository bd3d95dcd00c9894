#ifndef AMRMETER_EMBEDDINGS_H_
#define AMRMETER_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace amrmeter {

using Vector = std::vector<double>;

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word -> vector table in GloVe text format ("word v1 ... vd" per line).
class StaticEmbeddingTable {
 public:
  StaticEmbeddingTable() = default;
  explicit StaticEmbeddingTable(size_t dimension) : dimension_(dimension) {}

  // Inserts or replaces. Throws EmbeddingError on a dimension mismatch.
  void Add(std::string word, Vector vector);

  size_t dimension() const { return dimension_; }
  size_t size() const { return entries_.size(); }
  bool Contains(std::string_view word) const;
  // nullptr if absent.
  const Vector* Find(std::string_view word) const;
  // Mean Euclidean norm over all entries (0 for an empty table).
  double mean_norm() const;

 private:
  size_t dimension_ = 0;
  std::unordered_map<std::string, Vector> entries_;
  double norm_sum_ = 0.0;
};

// Reads a GloVe-style text file. A leading word2vec header ("count dim") is
// skipped. Duplicate words keep the last entry and emit a warning. Throws
// EmbeddingError for unreadable or empty files and dimension mismatches.
StaticEmbeddingTable LoadStaticTable(const std::filesystem::path& path);

enum class Provenance { kExact, kLemmaFallback, kOovZero };

std::string_view ProvenanceName(Provenance p);

struct TokenVector {
  std::string token;
  std::string lemma;
  Vector vector;
  Provenance provenance;
};

// Exact token first, then its lemma, else a zero vector. Never throws.
TokenVector Lookup(const StaticEmbeddingTable& table, std::string_view token,
                   std::string_view lemma);

enum class Side { kA, kB };

std::string_view SideName(Side side);
// Accepts "A"/"B" (any case). Throws EmbeddingError otherwise.
Side ParseSide(std::string_view name);

// Header record of a contextual store file:
//   {"type": "manifest", "model": ..., "layer": ..., "pooling": ..., "dim": ...}
struct StoreManifest {
  std::string model;
  int layer = -1;
  std::string pooling;
  size_t dim = 0;
};

// Per-sentence token vectors produced offline by a transformer.
class ContextualEmbeddingStore {
 public:
  struct Sentence {
    std::vector<std::string> tokens;
    std::vector<Vector> vectors;  // one row per token
  };

  ContextualEmbeddingStore() = default;
  explicit ContextualEmbeddingStore(size_t dimension) : dimension_(dimension) {}

  // Throws EmbeddingError if rows and tokens disagree or the dimension
  // differs from the store's.
  void Add(std::string case_id, Side side, Sentence sentence);

  size_t dimension() const { return dimension_; }
  size_t size() const { return sentences_.size(); }
  // nullptr if absent.
  const Sentence* Find(std::string_view case_id, Side side) const;

  const std::optional<StoreManifest>& manifest() const { return manifest_; }
  void set_manifest(StoreManifest manifest) { manifest_ = std::move(manifest); }

 private:
  size_t dimension_ = 0;
  std::optional<StoreManifest> manifest_;
  std::map<std::pair<std::string, Side>, Sentence> sentences_;
};

// Line-delimited JSON records {id, side, tokens, vectors, dim}. A record
// with "type": "manifest" is read as the header; other records without an
// "id" are skipped. Throws EmbeddingError if the manifest's dim disagrees
// with the rows.
ContextualEmbeddingStore LoadContextualStore(const std::filesystem::path& path);

// Cosine similarity; 0 if either vector has zero norm. Throws EmbeddingError
// on a dimension mismatch.
double Cosine(std::span<const double> u, std::span<const double> v);

double Norm(std::span<const double> v);

// Arithmetic mean of equally sized rows. Empty input gives an empty vector.
Vector MeanVector(std::span<const Vector> rows);

}  // namespace amrmeter

#endif  // AMRMETER_EMBEDDINGS_H_
