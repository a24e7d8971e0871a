#pragma once

#include "cotr/labels.hpp"
#include "cotr/prng.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace cotr {

/// One evaluation item for a classification task. `text` is source-language
/// Unicode (typically Devanagari); `gold` is a canonical label.
struct ClassificationExample {
  std::string id;
  std::string text;
  std::string gold;

  bool operator==(const ClassificationExample&) const = default;
};

struct GenerationExample {
  std::string id;
  std::string article;
  std::string reference_headline;

  bool operator==(const GenerationExample&) const = default;
};

enum class DatasetFormat {
  Delimited,     // header row + delimiter-separated columns
  RecordStream,  // one JSON record per line
};

/// How to project a raw file onto examples. `label_map` (optional) maps raw
/// label values to canonical labels; its values must all be members of the
/// task's LabelSet.
struct DatasetSchema {
  DatasetFormat format = DatasetFormat::Delimited;
  std::string text_field;
  std::string label_field;      // classification only
  std::string reference_field;  // generation only
  std::string id_field;         // optional; row ids are synthesized when empty
  char delimiter = '\t';        // delimited only
  std::map<std::string, std::string> label_map;
};

struct LoadOptions {
  /// When true, rows failing validation are counted and skipped instead of
  /// aborting the load. Default is fail-fast: silent row loss corrupts
  /// error-rate denominators.
  bool skip_invalid = false;
};

struct LoadStats {
  std::size_t rows_read = 0;
  std::size_t skipped = 0;
};

/// Loads and validates a classification dataset. Input order is preserved.
/// Throws FileError (unreadable), SchemaError (missing field), LabelError
/// (label not in `labels` / not covered by label_map, with row number).
std::vector<ClassificationExample> load_classification_dataset(
    const std::filesystem::path& path, const DatasetSchema& schema,
    const LabelSet& labels, const LoadOptions& options = {},
    LoadStats* stats = nullptr);

std::vector<GenerationExample> load_generation_dataset(
    const std::filesystem::path& path, const DatasetSchema& schema,
    const LoadOptions& options = {}, LoadStats* stats = nullptr);

/// Serializers producing files that load back to an identical example list.
void write_classification_dataset(const std::filesystem::path& path,
                                  const DatasetSchema& schema,
                                  const std::vector<ClassificationExample>& examples);
void write_generation_dataset(const std::filesystem::path& path,
                              const DatasetSchema& schema,
                              const std::vector<GenerationExample>& examples);

/// Deterministically subsamples `n` examples via a seeded permutation
/// (SplitMix64 counter stream; see prng.hpp). Returns the whole list in
/// original order when n >= size. Same (examples, n, seed) always yields the
/// same selection on every platform.
template <typename Example>
std::vector<Example> sample_examples(const std::vector<Example>& examples,
                                     std::size_t n, std::uint64_t seed) {
  if (n >= examples.size()) return examples;
  const std::vector<std::size_t> perm = seeded_permutation(examples.size(), seed);
  std::vector<Example> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(examples[perm[i]]);
  return out;
}

}  // namespace cotr
