#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fapinette::text {

/// UTF-8 to code points. Ill-formed sequences decode to U+FFFD.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);

/// Unicode canonical composition (NFC).
std::string nfc(std::string_view utf8);

/// Full Unicode lowercase mapping (root locale).
std::string lowercase(std::string_view utf8);

bool is_punctuation(char32_t c);
bool is_space(char32_t c);
bool is_letter_or_digit(char32_t c);

/// Number of code points.
size_t length(std::string_view utf8);

/// Replaces every tab, CR and LF with a single space.
std::string flatten_whitespace(std::string_view s);

/// True when `token` denotes `lemma`: byte-equal, or equal after lowercasing.
bool same_word(std::string_view token, std::string_view lemma);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace fapinette::text
