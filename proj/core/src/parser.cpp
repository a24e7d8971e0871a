#include "cotr/parser.hpp"

#include "cotr/errors.hpp"
#include "cotr/text.hpp"

#include <algorithm>
#include <vector>

namespace cotr {

namespace {

constexpr std::size_t kExcerptLimit = 160;

std::string excerpt(std::string_view raw) {
  std::string out(raw.substr(0, kExcerptLimit));
  if (raw.size() > kExcerptLimit) out += "...";
  return out;
}

std::vector<std::string_view> split_lines(std::string_view raw) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const std::size_t nl = raw.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(raw.substr(start));
      break;
    }
    std::string_view line = raw.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto la = static_cast<char>(std::tolower(static_cast<unsigned char>(a[i])));
    const auto lb = static_cast<char>(std::tolower(static_cast<unsigned char>(b[i])));
    if (la != lb) return false;
  }
  return true;
}

// Tries to read `header` + optional spaces + ':' at line position `pos`.
// Returns the content start offset within the line, or npos.
std::size_t match_header_at(std::string_view line, std::size_t pos,
                            std::string_view header) {
  if (line.size() < pos + header.size() + 1) return std::string_view::npos;
  if (!iequals_ascii(line.substr(pos, header.size()), header)) {
    return std::string_view::npos;
  }
  std::size_t i = pos + header.size();
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || line[i] != ':') return std::string_view::npos;
  return i + 1;
}

struct HeaderMatch {
  SectionTag tag;
  std::size_t line;
  std::string inline_content;
};

// Finds header lines for the expected tags, in document order. Strict mode
// allows only whitespace before the header; lenient additionally skips
// markdown-style decoration (*, #, -, >) and strips trailing decoration
// from the inline content.
std::vector<HeaderMatch> find_headers(const std::vector<std::string_view>& lines,
                                      const std::vector<SectionTag>& expected,
                                      bool lenient) {
  std::vector<HeaderMatch> matches;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    std::size_t pos = 0;
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (lenient) {
      while (pos < line.size() &&
             (line[pos] == '*' || line[pos] == '#' || line[pos] == '-' ||
              line[pos] == '>' || line[pos] == ' ' || line[pos] == '\t')) {
        ++pos;
      }
    }
    for (SectionTag tag : expected) {
      // Longest header first would matter if one header were a prefix of
      // another; ours never are ("English Headline" vs "Marathi Headline").
      const std::size_t content_pos = match_header_at(line, pos, section_header(tag));
      if (content_pos != std::string_view::npos) {
        std::string content(line.substr(content_pos));
        if (lenient) {
          while (!content.empty() &&
                 (content.back() == '*' || content.back() == ' ' ||
                  content.back() == '\t')) {
            content.pop_back();
          }
          std::size_t lead = 0;
          while (lead < content.size() &&
                 (content[lead] == '*' || content[lead] == ' ' ||
                  content[lead] == '\t')) {
            ++lead;
          }
          content.erase(0, lead);
        }
        matches.push_back({tag, ln, std::move(content)});
        break;
      }
    }
  }
  return matches;
}

std::map<SectionTag, std::string> collect_sections(
    const std::vector<std::string_view>& lines,
    const std::vector<HeaderMatch>& matches) {
  std::map<SectionTag, std::string> sections;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    if (sections.count(matches[k].tag)) continue;  // first occurrence wins
    std::string content = matches[k].inline_content;
    const std::size_t end_line =
        k + 1 < matches.size() ? matches[k + 1].line : lines.size();
    for (std::size_t ln = matches[k].line + 1; ln < end_line; ++ln) {
      content += '\n';
      content += std::string(lines[ln]);
    }
    sections[matches[k].tag] = text::trim(content);
  }
  return sections;
}

std::optional<ParsedOutput> try_strict(std::string_view raw,
                                       const PromptSpec& spec) {
  const auto lines = split_lines(raw);
  const auto matches = find_headers(lines, spec.expected_sections, false);
  if (matches.size() != spec.expected_sections.size()) return std::nullopt;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (matches[i].tag != spec.expected_sections[i]) return std::nullopt;
  }
  ParsedOutput out;
  out.sections = collect_sections(lines, matches);
  out.parse_mode_used = ParseMode::Strict;
  return out;
}

}  // namespace

std::string_view parse_mode_name(ParseMode m) {
  return m == ParseMode::Strict ? "strict" : "lenient";
}

ParseMode parse_mode_from_name(std::string_view name) {
  if (name == "strict") return ParseMode::Strict;
  if (name == "lenient") return ParseMode::Lenient;
  throw ConfigError("unknown parse mode '" + std::string(name) +
                    "' (expected strict|lenient)");
}

std::string_view failure_reason_name(FailureReason r) {
  switch (r) {
    case FailureReason::MissingSection: return "missing_section";
    case FailureReason::AmbiguousLabel: return "ambiguous_label";
    case FailureReason::UnknownLabel: return "unknown_label";
    case FailureReason::EmptyResponse: return "empty_response";
    case FailureReason::Refused: return "refused";
  }
  return "?";
}

ParseResult parse_sections(std::string_view raw, const PromptSpec& spec,
                           ParseMode mode) {
  if (text::trim(raw).empty()) {
    return ParseFailure{FailureReason::EmptyResponse, excerpt(raw)};
  }

  if (auto strict = try_strict(raw, spec)) return *strict;
  if (mode == ParseMode::Strict) {
    return ParseFailure{FailureReason::MissingSection, excerpt(raw)};
  }

  // Lenient: any order, decorated headers, translation sections optional.
  const auto lines = split_lines(raw);
  const auto matches = find_headers(lines, spec.expected_sections, true);
  ParsedOutput out;
  out.sections = collect_sections(lines, matches);
  out.parse_mode_used = ParseMode::Lenient;
  for (SectionTag tag : spec.expected_sections) {
    if (out.sections.count(tag) == 0 && !is_translation_section(tag)) {
      return ParseFailure{FailureReason::MissingSection, excerpt(raw)};
    }
  }
  return out;
}

LabelResult normalize_label(std::string_view raw_label, const LabelSet& labels) {
  const std::string cleaned =
      text::strip_edge_punctuation(text::trim(raw_label));
  const std::string folded = text::fold_case(cleaned);

  // Exact case-folded match.
  for (const auto& label : labels.labels()) {
    if (text::fold_case(label) == folded) return label;
  }

  // Unique whole-word containment over the full raw string.
  const std::u32string haystack = text::decode_utf8(text::fold_case(text::trim(raw_label)));
  std::vector<const std::string*> hits;
  for (const auto& label : labels.labels()) {
    const std::u32string needle = text::decode_utf8(text::fold_case(label));
    if (needle.empty() || needle.size() > haystack.size()) continue;
    bool found = false;
    for (std::size_t pos = 0; pos + needle.size() <= haystack.size(); ++pos) {
      if (haystack.compare(pos, needle.size(), needle) != 0) continue;
      const bool left_ok = pos == 0 || !text::is_word_char(haystack[pos - 1]);
      const std::size_t end = pos + needle.size();
      const bool right_ok =
          end == haystack.size() || !text::is_word_char(haystack[end]);
      if (left_ok && right_ok) {
        found = true;
        break;
      }
    }
    if (found) hits.push_back(&label);
  }
  if (hits.size() == 1) return *hits[0];
  if (hits.empty()) {
    return ParseFailure{FailureReason::UnknownLabel, excerpt(raw_label)};
  }
  return ParseFailure{FailureReason::AmbiguousLabel, excerpt(raw_label)};
}

HeadlineResult extract_headlines(const ParsedOutput& parsed, Strategy strategy) {
  if (!is_generation_strategy(strategy)) {
    throw StrategyError("extract_headlines requires a generation strategy, got '" +
                        std::string(strategy_name(strategy)) + "'");
  }
  Headlines out;
  auto marathi = parsed.sections.find(SectionTag::MarathiHeadline);
  if (marathi == parsed.sections.end() || text::trim(marathi->second).empty()) {
    return ParseFailure{FailureReason::MissingSection, "no Marathi headline section"};
  }
  out.marathi_headline = marathi->second;
  if (strategy == Strategy::HalfTranslation ||
      strategy == Strategy::FullTranslation) {
    auto english = parsed.sections.find(SectionTag::EnglishHeadline);
    if (english == parsed.sections.end() || text::trim(english->second).empty()) {
      return ParseFailure{FailureReason::MissingSection,
                          "no English headline section"};
    }
    out.english_headline = english->second;
  }
  return out;
}

}  // namespace cotr
