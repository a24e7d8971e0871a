#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cotr {

/// The prompting strategies under comparison. The first three apply to
/// classification tasks, the last three to headline generation.
enum class Strategy {
  Standard,         // task performed directly on the source-language text
  CoTR,             // single prompt: translate to English, then classify
  PreTranslated,    // external MT first, then an all-English prompt
  DirectGen,        // headline generated directly in the source language
  HalfTranslation,  // English headline from the source article, back-translated
  FullTranslation,  // article translated, English headline, back-translated
};

bool is_classification_strategy(Strategy s);
bool is_generation_strategy(Strategy s);

/// Stable lowercase names used in configs, CLI flags, and records:
/// standard, cotr, pretranslated, direct, half, full.
std::string_view strategy_name(Strategy s);

/// Throws ConfigError on an unknown name.
Strategy strategy_from_name(std::string_view name);

/// Labeled output sections a prompt instructs the model to emit.
enum class SectionTag {
  Translation,
  Label,
  EnglishArticle,
  EnglishHeadline,
  MarathiHeadline,
};

/// Header text as it appears in prompts and model responses, without the
/// trailing colon: "Translation", "Label", "English Article", ...
std::string_view section_header(SectionTag tag);

/// Snake-case key used in persisted records (translation, label, ...).
std::string_view section_key(SectionTag tag);

SectionTag section_from_key(std::string_view key);

/// True for sections that carry an intermediate translation; these are the
/// ones lenient parsing may tolerate missing.
bool is_translation_section(SectionTag tag);

/// The fixed (strategy -> expected sections) mapping.
std::vector<SectionTag> expected_sections_for(Strategy s);

}  // namespace cotr
