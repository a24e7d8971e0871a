#include "cotr/config.hpp"

#include "cotr/digest.hpp"
#include "cotr/errors.hpp"
#include "cotr/prompt.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace cotr {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_absolute()) return path;
  return base / path;
}

DatasetFormat format_from_name(const std::string& name) {
  if (name == "delimited") return DatasetFormat::Delimited;
  if (name == "jsonl" || name == "record-stream") return DatasetFormat::RecordStream;
  throw ConfigError("unknown dataset format '" + name +
                    "' (expected delimited|jsonl)");
}

char delimiter_from_string(const std::string& s) {
  if (s == "\\t" || s == "tab") return '\t';
  if (s.size() != 1) {
    throw ConfigError("delimiter must be one character, 'tab', or '\\t'");
  }
  return s[0];
}

DatasetConfig dataset_from_json(const json& j,
                                const std::filesystem::path& base) {
  DatasetConfig ds;
  ds.name = j.at("name").get<std::string>();
  const std::string task = j.value("task", "classification");
  if (task == "classification") ds.generation = false;
  else if (task == "generation") ds.generation = true;
  else throw ConfigError("dataset '" + ds.name + "': unknown task '" + task + "'");

  ds.path = resolve(base, j.at("path").get<std::string>());
  ds.schema.format = format_from_name(j.value("format", "delimited"));
  ds.schema.text_field = j.at("text_field").get<std::string>();
  ds.schema.label_field = j.value("label_field", "");
  ds.schema.reference_field = j.value("reference_field", "");
  ds.schema.id_field = j.value("id_field", "");
  if (j.contains("delimiter")) {
    ds.schema.delimiter = delimiter_from_string(j.at("delimiter").get<std::string>());
  }
  if (j.contains("label_map")) {
    for (const auto& [raw, canonical] : j.at("label_map").items()) {
      ds.schema.label_map[raw] = canonical.get<std::string>();
    }
  }
  if (j.contains("labels")) {
    ds.labels = LabelSet(ds.name, j.at("labels").get<std::vector<std::string>>());
  }
  ds.task_description = j.value("task_description", "");
  ds.sample_n = j.value("sample_n", std::size_t{100});
  ds.seed = j.value("seed", std::uint64_t{0});
  ds.skip_invalid = j.value("skip_invalid", false);
  if (j.contains("models")) {
    ds.model_filter = j.at("models").get<std::vector<std::string>>();
  }
  if (j.contains("strategies")) {
    for (const auto& s : j.at("strategies")) {
      ds.strategy_filter.push_back(strategy_from_name(s.get<std::string>()));
    }
  }
  return ds;
}

}  // namespace

std::string_view parse_failure_policy_name(ParseFailurePolicy p) {
  return p == ParseFailurePolicy::CountAsError ? "count_as_error"
                                               : "exclude_from_denominator";
}

ParseFailurePolicy parse_failure_policy_from_name(std::string_view name) {
  if (name == "count_as_error") return ParseFailurePolicy::CountAsError;
  if (name == "exclude_from_denominator" || name == "exclude") {
    return ParseFailurePolicy::ExcludeFromDenominator;
  }
  throw ConfigError("unknown parse_failure_policy '" + std::string(name) + "'");
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string raw = buf.str();

  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }

  const std::filesystem::path base =
      file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");

  RunConfig cfg;
  cfg.config_digest = sha256_hex(raw);
  try {
    cfg.run_name = doc.value("run_name", file.stem().string());
    cfg.output_dir = resolve(base, doc.value("output_dir", "out"));
    cfg.cache_dir = resolve(base, doc.value("cache_dir", "cache"));
    cfg.templates_dir = resolve(base, doc.value("templates_dir", "templates"));
    if (doc.contains("chat_fixture")) {
      cfg.chat_fixture = resolve(base, doc.at("chat_fixture").get<std::string>());
    }
    cfg.parallelism = doc.value("parallelism", 4);
    cfg.parse_mode = parse_mode_from_name(doc.value("parse_mode", "strict"));
    cfg.parse_failure_policy = parse_failure_policy_from_name(
        doc.value("parse_failure_policy", "count_as_error"));
    cfg.failure_threshold = doc.value("failure_threshold", 0.5);
    cfg.two_call_mode = doc.value("two_call_mode", false);
    if (doc.contains("decoding")) {
      const auto& d = doc.at("decoding");
      cfg.decoding.temperature = d.value("temperature", 0.0);
      cfg.decoding.max_tokens = d.value("max_tokens", 1024);
    }
    if (doc.contains("retry")) {
      const auto& r = doc.at("retry");
      cfg.retry.max_attempts = r.value("max_attempts", 3);
      cfg.retry.initial_backoff_ms = r.value("initial_backoff_ms", 200);
      cfg.retry.multiplier = r.value("multiplier", 2.0);
      cfg.retry.max_backoff_ms = r.value("max_backoff_ms", 5000);
    }
    for (const auto& m : doc.value("models", json::array())) {
      ModelConfig model;
      model.provider = m.value("provider", "http");
      model.model_id = m.at("model_id").get<std::string>();
      model.endpoint_url = m.value("endpoint_url", "");
      model.credential_env = m.value("credential_env", "");
      cfg.models.push_back(std::move(model));
    }
    for (const auto& s : doc.value("strategies", json::array())) {
      cfg.strategies.push_back(strategy_from_name(s.get<std::string>()));
    }
    for (const auto& d : doc.value("datasets", json::array())) {
      cfg.datasets.push_back(dataset_from_json(d, base));
    }
    if (doc.contains("mt")) {
      const auto& m = doc.at("mt");
      cfg.mt.provider = m.value("provider", "mock");
      if (m.contains("fixture")) {
        cfg.mt.fixture = resolve(base, m.at("fixture").get<std::string>());
      }
      cfg.mt.endpoint_url = m.value("endpoint_url", "");
      cfg.mt.credential_env = m.value("credential_env", "");
      cfg.mt.source_lang = m.value("source_lang", "mr");
      cfg.mt.target_lang = m.value("target_lang", "en");
    }
  } catch (const json::exception& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }
  return cfg;
}

void RunConfig::validate() const {
  if (datasets.empty()) throw ConfigError("config has no datasets");
  if (models.empty()) throw ConfigError("config has no models");
  if (strategies.empty()) throw ConfigError("config has no strategies");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be >= 1");
  if (failure_threshold < 0.0 || failure_threshold > 1.0) {
    throw ConfigError("failure_threshold must be in [0, 1]");
  }
  if (decoding.max_tokens < 1) throw ConfigError("decoding.max_tokens must be >= 1");
  if (decoding.temperature < 0.0) throw ConfigError("temperature must be >= 0");

  std::set<std::string> names;
  std::set<std::string> model_ids;
  for (const auto& m : models) {
    if (m.provider != "mock" && m.provider != "http") {
      throw ConfigError("model '" + m.model_id + "': unknown provider '" +
                        m.provider + "'");
    }
    if (m.provider == "http" && m.endpoint_url.empty()) {
      throw ConfigError("model '" + m.model_id + "' needs an endpoint_url");
    }
    if (!model_ids.insert(m.model_id).second) {
      throw ConfigError("duplicate model_id '" + m.model_id + "'");
    }
  }
  for (const auto& ds : datasets) {
    if (!names.insert(ds.name).second) {
      throw ConfigError("duplicate dataset name '" + ds.name + "'");
    }
    if (!ds.generation) {
      if (!ds.labels) {
        throw ConfigError("classification dataset '" + ds.name +
                          "' needs a labels list");
      }
      if (ds.schema.label_field.empty()) {
        throw ConfigError("classification dataset '" + ds.name +
                          "' needs a label_field");
      }
      if (ds.task_description.empty()) {
        throw ConfigError("classification dataset '" + ds.name +
                          "' needs a task_description");
      }
      for (const auto& [raw, canonical] : ds.schema.label_map) {
        if (!ds.labels->contains(canonical)) {
          throw ConfigError("dataset '" + ds.name + "': label_map value '" +
                            canonical + "' is not in labels");
        }
      }
    } else {
      if (ds.schema.reference_field.empty()) {
        throw ConfigError("generation dataset '" + ds.name +
                          "' needs a reference_field");
      }
    }
    for (const auto& id : ds.model_filter) {
      if (!model_ids.count(id)) {
        throw ConfigError("dataset '" + ds.name + "' filters on unknown model '" +
                          id + "'");
      }
    }
    // Strategy/task compatibility: a dataset must end up with at least one
    // applicable strategy, and explicit filters must match the task kind.
    for (Strategy s : ds.strategy_filter) {
      if (is_generation_strategy(s) != ds.generation) {
        throw ConfigError("dataset '" + ds.name + "' pairs task '" +
                          std::string(ds.generation ? "generation" : "classification") +
                          "' with strategy '" + std::string(strategy_name(s)) + "'");
      }
    }
    if (strategies_for(ds).empty()) {
      throw ConfigError("dataset '" + ds.name +
                        "' has no applicable strategy in this config");
    }
    if (models_for(ds).empty()) {
      throw ConfigError("dataset '" + ds.name +
                        "' has no applicable model in this config");
    }
  }
  if (mt.provider != "mock" && mt.provider != "http") {
    throw ConfigError("mt.provider must be mock or http");
  }
  const bool mock_models =
      std::any_of(models.begin(), models.end(),
                  [](const ModelConfig& m) { return m.provider == "mock"; });
  if (mock_models && chat_fixture.empty()) {
    throw ConfigError("mock models need a chat_fixture file");
  }
}

void RunConfig::validate_deep() const {
  validate();
  PromptEngine engine(templates_dir);  // throws on missing/bad templates
  for (const auto& ds : datasets) {
    LoadOptions opts{ds.skip_invalid};
    if (ds.generation) {
      load_generation_dataset(ds.path, ds.schema, opts);
    } else {
      load_classification_dataset(ds.path, ds.schema, *ds.labels, opts);
    }
  }
  if (mt.provider == "mock" && !mt.fixture.empty()) {
    MockTranslator::from_file(mt.fixture);  // throws on a bad fixture
  }
  if (!chat_fixture.empty()) {
    MockChatBackend::from_file(chat_fixture);
  }
}

std::vector<const ModelConfig*> RunConfig::models_for(
    const DatasetConfig& ds) const {
  std::vector<const ModelConfig*> out;
  for (const auto& m : models) {
    if (!ds.model_filter.empty()) {
      bool keep = false;
      for (const auto& id : ds.model_filter) keep |= (id == m.model_id);
      if (!keep) continue;
    }
    out.push_back(&m);
  }
  return out;
}

std::vector<Strategy> RunConfig::strategies_for(const DatasetConfig& ds) const {
  std::vector<Strategy> out;
  const auto& pool = ds.strategy_filter.empty() ? strategies : ds.strategy_filter;
  for (Strategy s : pool) {
    if (is_generation_strategy(s) == ds.generation) out.push_back(s);
  }
  return out;
}

}  // namespace cotr
