#pragma once

#include "cotr/dataset.hpp"
#include "cotr/labels.hpp"
#include "cotr/strategy.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cotr {

/// A fully rendered prompt plus the output schema it demands. Rendering is a
/// pure function: identical inputs yield byte-identical specs.
struct PromptSpec {
  std::string system_text;
  std::string user_text;
  std::vector<SectionTag> expected_sections;
  Strategy strategy = Strategy::Standard;
  std::string example_id;
};

/// One template file: optional system text above a lone `---` line, user
/// text below, with single-pass {placeholder} substitution. Substituted
/// values are never re-scanned, so placeholder syntax inside source text is
/// inert.
struct PromptTemplate {
  std::string system_text;
  std::string user_text;

  static PromptTemplate parse(std::string_view file_contents);

  /// Throws ValidationError on a placeholder missing from `values`.
  std::pair<std::string, std::string> render(
      const std::map<std::string, std::string>& values) const;
};

/// Escapes the text-block fence (`"""`) so embedded fences cannot terminate
/// the block: each `"""` becomes `\"""`. All other bytes pass verbatim.
std::string escape_text_block(std::string_view text);

/// Loads the (strategy, task) template files from a directory and renders
/// every prompting strategy into a PromptSpec.
class PromptEngine {
 public:
  /// Reads the six default templates plus the two-call-mode stage templates.
  /// Throws FileError if any file is missing.
  explicit PromptEngine(const std::filesystem::path& templates_dir);

  PromptSpec build_standard_classification_prompt(
      const ClassificationExample& ex, const LabelSet& labels,
      std::string_view task_description) const;

  /// Single prompt: translate to English first, then classify the
  /// translation. Sections: Translation before Label, always.
  PromptSpec build_cotr_classification_prompt(
      const ClassificationExample& ex, const LabelSet& labels,
      std::string_view task_description) const;

  /// All-English prompt over externally pre-translated text.
  PromptSpec build_pretranslated_prompt(std::string_view translated_text,
                                        const LabelSet& labels,
                                        std::string_view task_description,
                                        std::string_view example_id = {}) const;

  /// Throws StrategyError unless `strategy` is a generation kind.
  PromptSpec build_generation_prompt(const GenerationExample& ex,
                                     Strategy strategy) const;

  /// Two-call mode, first call: the half/full prompt truncated at the
  /// English headline (no back-translation section).
  PromptSpec build_generation_stage1_prompt(const GenerationExample& ex,
                                            Strategy strategy) const;

  /// Two-call mode, second call: back-translate an English headline.
  PromptSpec build_backtranslation_prompt(std::string_view english_headline,
                                          std::string_view example_id) const;

  /// Digest inputs for the run manifest: template name -> file SHA-256.
  const std::map<std::string, std::string>& template_digests() const {
    return digests_;
  }

 private:
  PromptSpec render(const std::string& template_name, Strategy strategy,
                    std::vector<SectionTag> sections,
                    const std::map<std::string, std::string>& values,
                    std::string_view example_id) const;

  std::map<std::string, PromptTemplate> templates_;
  std::map<std::string, std::string> digests_;
};

}  // namespace cotr
