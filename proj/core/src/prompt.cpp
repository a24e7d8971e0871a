#include "cotr/prompt.hpp"

#include "cotr/digest.hpp"
#include "cotr/errors.hpp"
#include "cotr/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cotr {

namespace {

const char* kTemplateFiles[] = {
    "classification_standard", "classification_cotr",
    "classification_pretranslated", "generation_direct",
    "generation_half", "generation_full",
    "generation_half_stage1", "generation_full_stage1",
    "backtranslate",
};

std::string substitute(std::string_view tmpl,
                       const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const char ch = tmpl[i];
    if (ch != '{') {
      out.push_back(ch);
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tmpl.size() &&
           (std::islower(static_cast<unsigned char>(tmpl[j])) || tmpl[j] == '_')) {
      ++j;
    }
    if (j > i + 1 && j < tmpl.size() && tmpl[j] == '}') {
      const std::string name(tmpl.substr(i + 1, j - i - 1));
      auto it = values.find(name);
      if (it == values.end()) {
        throw ValidationError("template references unknown placeholder {" +
                              name + "}");
      }
      out += it->second;
      i = j + 1;
    } else {
      out.push_back(ch);
      ++i;
    }
  }
  return out;
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string_view file_contents) {
  PromptTemplate t;
  std::size_t pos = 0;
  std::string body(file_contents);
  // Normalize CRLF so templates render identically regardless of checkout.
  std::string normalized;
  normalized.reserve(body.size());
  for (char ch : body) {
    if (ch != '\r') normalized.push_back(ch);
  }
  const std::string sep = "\n---\n";
  pos = normalized.find(sep);
  if (normalized.rfind("---\n", 0) == 0) {
    t.system_text.clear();
    t.user_text = normalized.substr(4);
  } else if (pos != std::string::npos) {
    t.system_text = normalized.substr(0, pos);
    t.user_text = normalized.substr(pos + sep.size());
  } else {
    t.user_text = normalized;
  }
  // Trailing newline is an artifact of the file, not of the prompt.
  while (!t.user_text.empty() && t.user_text.back() == '\n') t.user_text.pop_back();
  while (!t.system_text.empty() && t.system_text.back() == '\n') t.system_text.pop_back();
  if (text::trim(t.user_text).empty()) {
    throw ValidationError("template has an empty user section");
  }
  return t;
}

std::pair<std::string, std::string> PromptTemplate::render(
    const std::map<std::string, std::string>& values) const {
  return {substitute(system_text, values), substitute(user_text, values)};
}

std::string escape_text_block(std::string_view text) {
  static const std::string fence = "\"\"\"";
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, fence.size(), fence) == 0) {
      out += "\\\"\"\"";
      i += fence.size();
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

PromptEngine::PromptEngine(const std::filesystem::path& templates_dir) {
  for (const char* name : kTemplateFiles) {
    const std::filesystem::path file = templates_dir / (std::string(name) + ".txt");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw FileError("missing prompt template: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string contents = buf.str();
    templates_.emplace(name, PromptTemplate::parse(contents));
    digests_.emplace(name, sha256_hex(contents));
  }
}

PromptSpec PromptEngine::render(const std::string& template_name,
                                Strategy strategy,
                                std::vector<SectionTag> sections,
                                const std::map<std::string, std::string>& values,
                                std::string_view example_id) const {
  auto it = templates_.find(template_name);
  if (it == templates_.end()) {
    throw ValidationError("no template named " + template_name);
  }
  auto [system_text, user_text] = it->second.render(values);
  PromptSpec spec;
  spec.system_text = std::move(system_text);
  spec.user_text = std::move(user_text);
  spec.expected_sections = std::move(sections);
  spec.strategy = strategy;
  spec.example_id = std::string(example_id);
  return spec;
}

PromptSpec PromptEngine::build_standard_classification_prompt(
    const ClassificationExample& ex, const LabelSet& labels,
    std::string_view task_description) const {
  if (text::trim(task_description).empty()) {
    throw ValidationError("task_description is empty");
  }
  if (text::trim(ex.text).empty()) throw ValidationError("example text is empty");
  return render("classification_standard", Strategy::Standard,
                expected_sections_for(Strategy::Standard),
                {{"text", escape_text_block(ex.text)},
                 {"labels", labels.enumerated()},
                 {"task", std::string(task_description)}},
                ex.id);
}

PromptSpec PromptEngine::build_cotr_classification_prompt(
    const ClassificationExample& ex, const LabelSet& labels,
    std::string_view task_description) const {
  if (text::trim(task_description).empty()) {
    throw ValidationError("task_description is empty");
  }
  if (text::trim(ex.text).empty()) throw ValidationError("example text is empty");
  return render("classification_cotr", Strategy::CoTR,
                expected_sections_for(Strategy::CoTR),
                {{"text", escape_text_block(ex.text)},
                 {"labels", labels.enumerated()},
                 {"task", std::string(task_description)}},
                ex.id);
}

PromptSpec PromptEngine::build_pretranslated_prompt(
    std::string_view translated_text, const LabelSet& labels,
    std::string_view task_description, std::string_view example_id) const {
  if (text::trim(translated_text).empty()) {
    throw ValidationError("pre-translated text is empty");
  }
  if (text::trim(task_description).empty()) {
    throw ValidationError("task_description is empty");
  }
  return render("classification_pretranslated", Strategy::PreTranslated,
                expected_sections_for(Strategy::PreTranslated),
                {{"text", escape_text_block(translated_text)},
                 {"labels", labels.enumerated()},
                 {"task", std::string(task_description)}},
                example_id);
}

namespace {

std::string generation_template_name(Strategy strategy, bool stage1) {
  switch (strategy) {
    case Strategy::DirectGen:
      return "generation_direct";
    case Strategy::HalfTranslation:
      return stage1 ? "generation_half_stage1" : "generation_half";
    case Strategy::FullTranslation:
      return stage1 ? "generation_full_stage1" : "generation_full";
    default:
      throw StrategyError("strategy '" + std::string(strategy_name(strategy)) +
                          "' is not a generation strategy");
  }
}

}  // namespace

PromptSpec PromptEngine::build_generation_prompt(const GenerationExample& ex,
                                                 Strategy strategy) const {
  const std::string name = generation_template_name(strategy, false);
  if (text::trim(ex.article).empty()) throw ValidationError("article is empty");
  return render(name, strategy, expected_sections_for(strategy),
                {{"text", escape_text_block(ex.article)}}, ex.id);
}

PromptSpec PromptEngine::build_generation_stage1_prompt(
    const GenerationExample& ex, Strategy strategy) const {
  if (strategy == Strategy::DirectGen) {
    // Direct generation has no back-translation step to split off.
    return build_generation_prompt(ex, strategy);
  }
  const std::string name = generation_template_name(strategy, true);
  if (text::trim(ex.article).empty()) throw ValidationError("article is empty");
  std::vector<SectionTag> sections = expected_sections_for(strategy);
  sections.pop_back();  // drop MarathiHeadline; stage 2 produces it
  return render(name, strategy, std::move(sections),
                {{"text", escape_text_block(ex.article)}}, ex.id);
}

PromptSpec PromptEngine::build_backtranslation_prompt(
    std::string_view english_headline, std::string_view example_id) const {
  if (text::trim(english_headline).empty()) {
    throw ValidationError("english headline is empty");
  }
  return render("backtranslate", Strategy::HalfTranslation,
                {SectionTag::MarathiHeadline},
                {{"text", escape_text_block(english_headline)}}, example_id);
}

}  // namespace cotr
