#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace argmine::text {

// Decodes UTF-8 into codepoints. Invalid bytes decode as U+FFFD, one
// replacement per byte, so offsets stay monotone.
std::vector<char32_t> decode_utf8(const std::string& s);

std::string encode_utf8(const std::vector<char32_t>& cps);

// Substring by codepoint offsets [start, end).
std::string slice_codepoints(const std::string& s, std::size_t start,
                             std::size_t end);

std::size_t codepoint_length(const std::string& s);

bool is_unicode_space(char32_t cp);

// Splits on Unicode whitespace, drops empty tokens. Word counting and the
// augmentation length filter both use this.
std::vector<std::string> whitespace_tokens(const std::string& s);

std::size_t count_words(const std::string& s);

// ASCII case-fold + whitespace collapse, used for duplicate detection.
std::string normalize_for_dedup(const std::string& s);

// Fraction of Latin letters and of Arabic-script letters among all letters
// seen (only those two script classes are counted).
struct ScriptProfile {
  std::size_t latin = 0;
  std::size_t arabic = 0;
};
ScriptProfile script_profile(const std::string& s);

// Formats a count with thousands separators: 8001 -> "8,001".
std::string with_thousands(long long n);

// Percent with one decimal, round half up: 0.7485 -> "74.9".
std::string percent_1dp(double fraction);

// Same rounding on an already-percent value: 74.85 -> "74.9".
std::string round_1dp(double percent);

}  // namespace argmine::text
