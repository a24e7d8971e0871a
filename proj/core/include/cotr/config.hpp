#pragma once

#include "cotr/dataset.hpp"
#include "cotr/gateway.hpp"
#include "cotr/labels.hpp"
#include "cotr/parser.hpp"
#include "cotr/strategy.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cotr {

struct DecodingParams {
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct ModelConfig {
  std::string provider;  // mock | http
  std::string model_id;
  std::string endpoint_url;
  std::string credential_env;
};

struct DatasetConfig {
  std::string name;
  bool generation = false;
  std::filesystem::path path;
  DatasetSchema schema;
  std::optional<LabelSet> labels;  // classification only
  std::string task_description;    // classification only
  std::size_t sample_n = 100;
  std::uint64_t seed = 0;
  bool skip_invalid = false;
  // Optional per-dataset grid restrictions (the evaluation grid need not be
  // rectangular: generation tasks often run on fewer models).
  std::vector<std::string> model_filter;     // model_ids; empty = all
  std::vector<Strategy> strategy_filter;     // empty = all applicable
};

struct MtConfig {
  std::string provider = "mock";  // mock | http
  std::filesystem::path fixture;
  std::string endpoint_url;
  std::string credential_env;
  std::string source_lang = "mr";
  std::string target_lang = "en";
};

enum class ParseFailurePolicy { CountAsError, ExcludeFromDenominator };

std::string_view parse_failure_policy_name(ParseFailurePolicy p);
ParseFailurePolicy parse_failure_policy_from_name(std::string_view name);

/// The whole declarative description of one experiment run. Loaded from a
/// JSON file; every relative path is resolved against the file's directory.
struct RunConfig {
  std::string run_name;
  std::vector<DatasetConfig> datasets;
  std::vector<ModelConfig> models;
  std::vector<Strategy> strategies;
  DecodingParams decoding;
  RetryPolicy retry;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path output_dir = "out";
  std::filesystem::path templates_dir = "templates";
  std::filesystem::path chat_fixture;  // mock chat backend script
  MtConfig mt;
  ParseMode parse_mode = ParseMode::Strict;
  ParseFailurePolicy parse_failure_policy = ParseFailurePolicy::CountAsError;
  double failure_threshold = 0.5;  // abort when failed fraction exceeds this
  int parallelism = 4;
  bool two_call_mode = false;
  std::string config_digest;  // SHA-256 of the config file bytes

  static RunConfig load(const std::filesystem::path& file);

  /// Structural checks (non-empty grid, strategy/task compatibility).
  /// Throws ConfigError.
  void validate() const;

  /// validate() plus datasets actually load and templates parse.
  void validate_deep() const;

  /// Grid restricted to one dataset: models and strategies after filters.
  std::vector<const ModelConfig*> models_for(const DatasetConfig& ds) const;
  std::vector<Strategy> strategies_for(const DatasetConfig& ds) const;
};

}  // namespace cotr
