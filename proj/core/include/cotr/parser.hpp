#pragma once

#include "cotr/labels.hpp"
#include "cotr/prompt.hpp"
#include "cotr/strategy.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cotr {

enum class ParseMode { Strict, Lenient };

std::string_view parse_mode_name(ParseMode m);
ParseMode parse_mode_from_name(std::string_view name);

/// Structured sections extracted from a raw model response. Every key was in
/// the PromptSpec's expected_sections.
struct ParsedOutput {
  std::map<SectionTag, std::string> sections;
  std::optional<std::string> predicted_label;  // canonical, set by the caller
  ParseMode parse_mode_used = ParseMode::Strict;
};

enum class FailureReason {
  MissingSection,
  AmbiguousLabel,
  UnknownLabel,
  EmptyResponse,
  Refused,
};

std::string_view failure_reason_name(FailureReason r);

/// A typed parse failure, reported as a value so runs can count it.
struct ParseFailure {
  FailureReason reason;
  std::string offending_text;
};

using ParseResult = std::variant<ParsedOutput, ParseFailure>;
using LabelResult = std::variant<std::string, ParseFailure>;

/// Extracts the labeled sections the spec demanded from raw response text.
///
/// Strict mode requires every expected header to start a line, in order,
/// case-insensitively; content runs to the next header. Lenient mode
/// tolerates reordering, decoration around headers (`**Label:**`), and
/// missing translation-bearing sections. When called with Lenient, a strict
/// parse is attempted first and parse_mode_used records which one succeeded.
ParseResult parse_sections(std::string_view raw, const PromptSpec& spec,
                           ParseMode mode = ParseMode::Strict);

/// Maps raw model output to a canonical label: trim, strip surrounding
/// quotes/punctuation, case-fold; exact match wins, else a unique whole-word
/// containment match wins. Never throws.
LabelResult normalize_label(std::string_view raw_label, const LabelSet& labels);

struct Headlines {
  std::optional<std::string> english_headline;
  std::string marathi_headline;
};

using HeadlineResult = std::variant<Headlines, ParseFailure>;

/// MarathiHeadline is always required; EnglishHeadline additionally for the
/// half/full translation strategies. Throws StrategyError on a
/// classification strategy.
HeadlineResult extract_headlines(const ParsedOutput& parsed, Strategy strategy);

}  // namespace cotr
