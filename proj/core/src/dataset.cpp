#include "cotr/dataset.hpp"

#include "cotr/delimited.hpp"
#include "cotr/errors.hpp"
#include "cotr/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <optional>

namespace cotr {

namespace {

using nlohmann::json;

std::string synth_id(std::size_t row) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "r%04zu", row);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open dataset file: " + path.string());
  return in;
}

// One raw record presented as field lookups, independent of file format.
struct RawRecord {
  std::size_t row;  // 1-based data row number
  std::function<std::optional<std::string>(const std::string&)> field;
};

// Streams records to `visit`. For delimited files the required columns are
// checked once against the header, so a missing column fails the whole load
// regardless of skip_invalid.
void for_each_record(const std::filesystem::path& path,
                     const DatasetSchema& schema,
                     const std::vector<std::string>& required_fields,
                     const std::function<void(const RawRecord&)>& visit) {
  std::ifstream in = open_input(path);
  if (schema.format == DatasetFormat::Delimited) {
    DelimitedTable table = read_delimited(in, schema.delimiter);
    if (table.header.empty() && !table.rows.empty()) {
      throw SchemaError("delimited file has no header row");
    }
    if (!table.rows.empty()) {
      for (const auto& name : required_fields) {
        bool found = false;
        for (const auto& col : table.header) found |= (col == name);
        if (!found) {
          throw SchemaError("header of " + path.string() +
                            " has no column '" + name + "'");
        }
      }
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      RawRecord rec{
          r + 1,
          [&](const std::string& name) -> std::optional<std::string> {
            for (std::size_t c = 0; c < table.header.size(); ++c) {
              if (table.header[c] == name) return row[c];
            }
            return std::nullopt;
          }};
      visit(rec);
    }
  } else {
    std::string line;
    std::size_t r = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty()) continue;
      ++r;
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw SchemaError("row " + std::to_string(r) +
                          ": invalid record: " + e.what());
      }
      if (!obj.is_object()) {
        throw SchemaError("row " + std::to_string(r) +
                          ": record is not an object");
      }
      RawRecord rec{
          r,
          [&](const std::string& name) -> std::optional<std::string> {
            auto it = obj.find(name);
            if (it == obj.end()) return std::nullopt;
            if (it->is_string()) return it->get<std::string>();
            return it->dump();
          }};
      visit(rec);
    }
  }
}

std::string require_field(const RawRecord& rec, const std::string& name) {
  auto value = rec.field(name);
  if (!value) {
    throw SchemaError("row " + std::to_string(rec.row) + ": missing field '" +
                      name + "'");
  }
  return *value;
}

void require_schema_field(const std::string& name, const char* role) {
  if (name.empty()) {
    throw SchemaError(std::string("schema does not name a ") + role + " field");
  }
}

// Row-level failures are skippable under --skip-invalid; anything else
// aborts the load.
template <typename Fn>
void guarded_row(const LoadOptions& options, LoadStats& stats, Fn&& fn) {
  try {
    fn();
  } catch (const LabelError&) {
    if (!options.skip_invalid) throw;
    ++stats.skipped;
  } catch (const SchemaError&) {
    if (!options.skip_invalid) throw;
    ++stats.skipped;
  } catch (const ValidationError&) {
    if (!options.skip_invalid) throw;
    ++stats.skipped;
  }
}

}  // namespace

std::vector<ClassificationExample> load_classification_dataset(
    const std::filesystem::path& path, const DatasetSchema& schema,
    const LabelSet& labels, const LoadOptions& options, LoadStats* stats) {
  require_schema_field(schema.text_field, "text");
  require_schema_field(schema.label_field, "label");
  for (const auto& [raw, canonical] : schema.label_map) {
    if (!labels.contains(canonical)) {
      throw SchemaError("label_map value '" + canonical +
                        "' is not in the label set for task '" +
                        labels.task_name() + "'");
    }
  }
  std::vector<std::string> required = {schema.text_field, schema.label_field};
  if (!schema.id_field.empty()) required.push_back(schema.id_field);

  std::vector<ClassificationExample> out;
  LoadStats local;
  for_each_record(path, schema, required, [&](const RawRecord& rec) {
    ++local.rows_read;
    guarded_row(options, local, [&] {
      ClassificationExample ex;
      ex.text = require_field(rec, schema.text_field);
      if (text::trim(ex.text).empty()) {
        throw ValidationError("row " + std::to_string(rec.row) + ": empty text");
      }
      const std::string raw_label = require_field(rec, schema.label_field);
      if (!schema.label_map.empty()) {
        auto it = schema.label_map.find(raw_label);
        if (it == schema.label_map.end()) {
          throw LabelError("row " + std::to_string(rec.row) + ": label '" +
                           raw_label + "' has no label_map entry");
        }
        ex.gold = it->second;
      } else {
        ex.gold = labels.canonical(raw_label);
        if (ex.gold.empty()) {
          throw LabelError("row " + std::to_string(rec.row) + ": label '" +
                           raw_label + "' is not in the label set");
        }
      }
      ex.id = schema.id_field.empty() ? synth_id(rec.row)
                                      : require_field(rec, schema.id_field);
      out.push_back(std::move(ex));
    });
  });
  if (stats) *stats = local;
  return out;
}

std::vector<GenerationExample> load_generation_dataset(
    const std::filesystem::path& path, const DatasetSchema& schema,
    const LoadOptions& options, LoadStats* stats) {
  require_schema_field(schema.text_field, "text");
  require_schema_field(schema.reference_field, "reference");
  std::vector<std::string> required = {schema.text_field, schema.reference_field};
  if (!schema.id_field.empty()) required.push_back(schema.id_field);

  std::vector<GenerationExample> out;
  LoadStats local;
  for_each_record(path, schema, required, [&](const RawRecord& rec) {
    ++local.rows_read;
    guarded_row(options, local, [&] {
      GenerationExample ex;
      ex.article = require_field(rec, schema.text_field);
      ex.reference_headline = require_field(rec, schema.reference_field);
      if (text::trim(ex.article).empty() ||
          text::trim(ex.reference_headline).empty()) {
        throw ValidationError("row " + std::to_string(rec.row) +
                              ": empty article or reference headline");
      }
      ex.id = schema.id_field.empty() ? synth_id(rec.row)
                                      : require_field(rec, schema.id_field);
      out.push_back(std::move(ex));
    });
  });
  if (stats) *stats = local;
  return out;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write dataset file: " + path.string());
  return out;
}

}  // namespace

void write_classification_dataset(
    const std::filesystem::path& path, const DatasetSchema& schema,
    const std::vector<ClassificationExample>& examples) {
  std::ofstream out = open_output(path);
  const std::string id_field = schema.id_field.empty() ? "id" : schema.id_field;
  if (schema.format == DatasetFormat::Delimited) {
    DelimitedTable table;
    table.header = {id_field, schema.text_field, schema.label_field};
    for (const auto& ex : examples) {
      table.rows.push_back({ex.id, ex.text, ex.gold});
    }
    write_delimited(out, table, schema.delimiter);
  } else {
    for (const auto& ex : examples) {
      json obj;
      obj[id_field] = ex.id;
      obj[schema.text_field] = ex.text;
      obj[schema.label_field] = ex.gold;
      out << obj.dump() << '\n';
    }
  }
}

void write_generation_dataset(const std::filesystem::path& path,
                              const DatasetSchema& schema,
                              const std::vector<GenerationExample>& examples) {
  std::ofstream out = open_output(path);
  const std::string id_field = schema.id_field.empty() ? "id" : schema.id_field;
  if (schema.format == DatasetFormat::Delimited) {
    DelimitedTable table;
    table.header = {id_field, schema.text_field, schema.reference_field};
    for (const auto& ex : examples) {
      table.rows.push_back({ex.id, ex.article, ex.reference_headline});
    }
    write_delimited(out, table, schema.delimiter);
  } else {
    for (const auto& ex : examples) {
      json obj;
      obj[id_field] = ex.id;
      obj[schema.text_field] = ex.article;
      obj[schema.reference_field] = ex.reference_headline;
      out << obj.dump() << '\n';
    }
  }
}

}  // namespace cotr
