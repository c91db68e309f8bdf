#pragma once

#include <optional>
#include <string>
#include <string_view>

// Small, locale-independent UTF-8 and character-class helpers. All counting in
// the toolkit is done on Unicode scalar values.
namespace silver::unicode {

/// Decodes UTF-8. Returns nullopt on ill-formed input (overlong forms,
/// surrogates, truncated sequences, values above U+10FFFF).
std::optional<std::u32string> decode(std::string_view utf8);

/// Like decode() but replaces each ill-formed sequence with U+FFFD.
std::u32string decode_lossy(std::string_view utf8);

std::string encode(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_valid(std::string_view utf8);

bool is_alpha(char32_t c);
bool is_digit(char32_t c);  // ASCII 0-9 only
bool is_space(char32_t c);
inline bool is_alnum(char32_t c) { return is_digit(c) || is_alpha(c); }

/// Simple one-to-one lowercase mapping for Latin, Greek and Cyrillic.
char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view text);

}  // namespace silver::unicode
