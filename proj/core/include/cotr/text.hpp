#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cotr::text {

/// Canonical composition (Unicode NFC) of UTF-8 input. Invalid byte
/// sequences are replaced with U+FFFD.
std::string nfc(std::string_view utf8);

/// Unicode default case folding ("Happy" -> "happy", "STRASSE" -> "strasse").
/// Scripts without case (Devanagari) pass through unchanged.
std::string fold_case(std::string_view utf8);

/// Strips Unicode whitespace from both ends.
std::string trim(std::string_view utf8);

/// Splits on runs of Unicode whitespace; no empty pieces.
std::vector<std::string> split_whitespace(std::string_view utf8);

/// Removes leading and trailing punctuation codepoints (quotes, dandas,
/// brackets, ...). May return an empty string.
std::string strip_edge_punctuation(std::string_view utf8);

bool is_whitespace(char32_t cp);
bool is_punctuation(char32_t cp);

/// Word constituents for whole-word matching: letters, digits, combining
/// marks, and the in-word joiners '-', '_', '\''.
bool is_word_char(char32_t cp);

std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(const std::u32string& cps);

}  // namespace cotr::text
