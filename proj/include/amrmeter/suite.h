#ifndef AMRMETER_SUITE_H_
#define AMRMETER_SUITE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amrmeter/test_case.h"

namespace amrmeter {

class SuiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The eleven phenomena of the CheckList plus any configured extras. Lookup is
// insensitive to case, spaces, hyphens and underscores and knows common
// abbreviations ("SRL", "SubCl", "Neg").
class PhenomenonRegistry {
 public:
  PhenomenonRegistry();
  void Add(std::string_view canonical_name);
  // Canonical name, or nullopt for an unknown phenomenon.
  std::optional<std::string> Canonicalize(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::string> aliases_;
};

std::optional<Dataset> ParseDataset(std::string_view name);

// Loads a suite. Line-delimited records
//   {id, dataset, phenomenon, sentence_a, sentence_b, amr_a, amr_b, human_score}
// with optional tokens_a/b and lemmas_a/b arrays, or a grouped JSON document
// (phenomenon -> cases, optionally nested under dataset). Throws SuiteError
// naming the case for schema violations, out-of-range scores and AMR errors.
std::vector<TestCase> LoadSuite(const std::filesystem::path& path,
                                const PhenomenonRegistry& phenomena = {});

// Same, from in-memory text.
std::vector<TestCase> ParseSuite(std::string_view text,
                                 const PhenomenonRegistry& phenomena = {});

struct GroupStatistics {
  size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;   // sample standard deviation
  double std_error = 0.0;
};

GroupStatistics DescribeScores(std::vector<double> scores);

struct SuiteStatistics {
  size_t total = 0;
  // dataset -> phenomenon -> statistics of human scores
  std::map<Dataset, std::map<std::string, GroupStatistics>> groups;
  std::map<Dataset, GroupStatistics> datasets;

  size_t Count(Dataset dataset, std::string_view phenomenon) const;
};

SuiteStatistics ValidateSuite(const std::vector<TestCase>& cases);

}  // namespace amrmeter

#endif  // AMRMETER_SUITE_H_
