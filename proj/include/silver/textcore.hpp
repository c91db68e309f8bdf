#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace silver {

/// One normalized sentence with its cached surface statistics.
///
/// `chars` holds the decoded scalar values of `raw_text`; every length and
/// ratio below is measured in scalars, never bytes.
struct SentenceRecord {
    std::string raw_text;
    std::vector<std::string> tokens;
    std::u32string chars;
    std::size_t char_len = 0;
    double alpha_ratio = 0.0;
    std::size_t syllable_count = 0;
    /// Tokens that contain at least one letter.
    std::size_t word_count = 0;

    static SentenceRecord from_text(std::string text);

    bool operator==(const SentenceRecord& other) const { return raw_text == other.raw_text; }
};

/// Rule-based tokenizer for raw text:
///  - whitespace separates chunks;
///  - a word is a run of letters and digits; a hyphen or apostrophe between two
///    letters stays inside the word ("pressure-sensitive", "can't");
///  - a digit run keeps at most one internal decimal point ("2.70");
///  - every other character is punctuation; runs of the same punctuation
///    character form one token ("..."), different characters split ("%.").
std::vector<std::string> tokenize(std::string_view text);
std::vector<std::string> tokenize(std::u32string_view text);

/// Vowel-group syllable heuristic. 0 for tokens without letters.
std::size_t count_syllables(std::string_view word);

bool has_letter(std::string_view token);

double alpha_ratio(std::string_view text);
double alpha_ratio(std::u32string_view text);

/// Removes bracketed figure references such as "(12)", "(20, 21)" or "[4a]"
/// together with the whitespace in front of them.
std::string strip_figure_refs(std::string_view text);

/// Tokenize, lowercase, sort, join with single spaces.
std::string sorted_token_string(std::string_view text);
std::string sorted_token_string(const std::vector<std::string>& tokens);

std::string join_tokens(const std::vector<std::string>& tokens);
std::string to_lower(std::string_view text);

}  // namespace silver
