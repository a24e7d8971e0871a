#include "cotr/strategy.hpp"

#include "cotr/errors.hpp"

namespace cotr {

bool is_classification_strategy(Strategy s) {
  return s == Strategy::Standard || s == Strategy::CoTR ||
         s == Strategy::PreTranslated;
}

bool is_generation_strategy(Strategy s) { return !is_classification_strategy(s); }

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Standard: return "standard";
    case Strategy::CoTR: return "cotr";
    case Strategy::PreTranslated: return "pretranslated";
    case Strategy::DirectGen: return "direct";
    case Strategy::HalfTranslation: return "half";
    case Strategy::FullTranslation: return "full";
  }
  return "?";
}

Strategy strategy_from_name(std::string_view name) {
  if (name == "standard") return Strategy::Standard;
  if (name == "cotr") return Strategy::CoTR;
  if (name == "pretranslated") return Strategy::PreTranslated;
  if (name == "direct") return Strategy::DirectGen;
  if (name == "half") return Strategy::HalfTranslation;
  if (name == "full") return Strategy::FullTranslation;
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (expected standard|cotr|pretranslated|direct|half|full)");
}

std::string_view section_header(SectionTag tag) {
  switch (tag) {
    case SectionTag::Translation: return "Translation";
    case SectionTag::Label: return "Label";
    case SectionTag::EnglishArticle: return "English Article";
    case SectionTag::EnglishHeadline: return "English Headline";
    case SectionTag::MarathiHeadline: return "Marathi Headline";
  }
  return "?";
}

std::string_view section_key(SectionTag tag) {
  switch (tag) {
    case SectionTag::Translation: return "translation";
    case SectionTag::Label: return "label";
    case SectionTag::EnglishArticle: return "english_article";
    case SectionTag::EnglishHeadline: return "english_headline";
    case SectionTag::MarathiHeadline: return "marathi_headline";
  }
  return "?";
}

SectionTag section_from_key(std::string_view key) {
  if (key == "translation") return SectionTag::Translation;
  if (key == "label") return SectionTag::Label;
  if (key == "english_article") return SectionTag::EnglishArticle;
  if (key == "english_headline") return SectionTag::EnglishHeadline;
  if (key == "marathi_headline") return SectionTag::MarathiHeadline;
  throw ConfigError("unknown section key '" + std::string(key) + "'");
}

bool is_translation_section(SectionTag tag) {
  return tag == SectionTag::Translation || tag == SectionTag::EnglishArticle;
}

std::vector<SectionTag> expected_sections_for(Strategy s) {
  switch (s) {
    case Strategy::Standard:
    case Strategy::PreTranslated:
      return {SectionTag::Label};
    case Strategy::CoTR:
      return {SectionTag::Translation, SectionTag::Label};
    case Strategy::DirectGen:
      return {SectionTag::MarathiHeadline};
    case Strategy::HalfTranslation:
      return {SectionTag::EnglishHeadline, SectionTag::MarathiHeadline};
    case Strategy::FullTranslation:
      return {SectionTag::EnglishArticle, SectionTag::EnglishHeadline,
              SectionTag::MarathiHeadline};
  }
  return {};
}

}  // namespace cotr
