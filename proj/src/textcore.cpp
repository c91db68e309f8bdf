#include "silver/textcore.hpp"

#include <algorithm>

#include "silver/unicode.hpp"

namespace silver {

namespace {

bool is_joiner(char32_t c) { return c == U'-' || c == U'\'' || c == 0x2019; }

bool is_vowel(char32_t c) {
    switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
            return true;
        default:
            return false;
    }
}

void tokenize_chunk(std::u32string_view chunk, std::vector<std::string>& out) {
    std::size_t i = 0;
    const std::size_t n = chunk.size();
    while (i < n) {
        const std::size_t start = i;
        if (unicode::is_alnum(chunk[i])) {
            bool all_digits = true;
            bool seen_point = false;
            while (i < n) {
                const char32_t c = chunk[i];
                if (unicode::is_alnum(c)) {
                    all_digits = all_digits && unicode::is_digit(c);
                    ++i;
                    continue;
                }
                const bool has_next = i + 1 < n;
                if (is_joiner(c) && has_next && unicode::is_alpha(chunk[i - 1]) &&
                    unicode::is_alpha(chunk[i + 1])) {
                    all_digits = false;
                    i += 1;
                    continue;
                }
                if (c == U'.' && all_digits && !seen_point && has_next &&
                    unicode::is_digit(chunk[i + 1])) {
                    seen_point = true;
                    i += 1;
                    continue;
                }
                break;
            }
        } else {
            const char32_t c = chunk[i];
            while (i < n && chunk[i] == c) ++i;
        }
        out.push_back(unicode::encode(chunk.substr(start, i - start)));
    }
}

}  // namespace

std::vector<std::string> tokenize(std::u32string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && unicode::is_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !unicode::is_space(text[i])) ++i;
        if (i > start) tokenize_chunk(text.substr(start, i - start), tokens);
    }
    return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
    return tokenize(unicode::decode_lossy(text));
}

bool has_letter(std::string_view token) {
    const auto cps = unicode::decode_lossy(token);
    return std::any_of(cps.begin(), cps.end(), [](char32_t c) { return unicode::is_alpha(c); });
}

std::size_t count_syllables(std::string_view word) {
    const auto cps = unicode::to_lower(unicode::decode_lossy(word));
    bool any_letter = false;
    std::size_t groups = 0;
    bool in_group = false;
    for (char32_t c : cps) {
        any_letter = any_letter || unicode::is_alpha(c);
        const bool v = is_vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    if (!any_letter) return 0;

    const std::size_t n = cps.size();
    if (n >= 2 && cps[n - 1] == U'e') {
        const char32_t prev = cps[n - 2];
        if (unicode::is_alpha(prev) && !is_vowel(prev) && groups > 0) --groups;
    }
    return std::max<std::size_t>(groups, 1);
}

double alpha_ratio(std::u32string_view text) {
    if (text.empty()) return 0.0;
    const auto alpha = std::count_if(text.begin(), text.end(),
                                     [](char32_t c) { return unicode::is_alpha(c); });
    return static_cast<double>(alpha) / static_cast<double>(text.size());
}

double alpha_ratio(std::string_view text) { return alpha_ratio(unicode::decode_lossy(text)); }

namespace {

// Matches a figure-reference group starting at text[open]. Returns one past the
// closing bracket, or 0 when the group is not a pure reference list.
std::size_t match_figure_ref(std::u32string_view text, std::size_t open) {
    const char32_t close = text[open] == U'(' ? U')' : U']';
    std::size_t i = open + 1;
    const std::size_t n = text.size();
    auto skip_separators = [&](bool allow_comma) {
        std::size_t before = i;
        while (i < n && (unicode::is_space(text[i]) || (allow_comma && text[i] == U','))) ++i;
        return i > before;
    };

    skip_separators(false);
    std::size_t items = 0;
    while (i < n) {
        if (!unicode::is_digit(text[i])) break;
        while (i < n && unicode::is_digit(text[i])) ++i;
        if (i < n && unicode::is_alpha(text[i])) {
            ++i;
            if (i < n && unicode::is_alnum(text[i])) return 0;
        }
        ++items;
        const std::size_t sep_start = i;
        skip_separators(true);
        if (i < n && text[i] == close) return items > 0 ? i + 1 : 0;
        if (i == sep_start) return 0;
    }
    return 0;
}

}  // namespace

std::string strip_figure_refs(std::string_view text) {
    const auto cps = unicode::decode_lossy(text);
    std::u32string out;
    out.reserve(cps.size());
    std::size_t i = 0;
    bool removed_at_start = false;
    while (i < cps.size()) {
        const char32_t c = cps[i];
        if (c == U'(' || c == U'[') {
            if (std::size_t end = match_figure_ref(cps, i); end != 0) {
                while (!out.empty() && unicode::is_space(out.back())) out.pop_back();
                removed_at_start = out.empty();
                i = end;
                if (removed_at_start) {
                    while (i < cps.size() && unicode::is_space(cps[i])) ++i;
                }
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return unicode::encode(out);
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

std::string to_lower(std::string_view text) {
    return unicode::encode(unicode::to_lower(unicode::decode_lossy(text)));
}

std::string sorted_token_string(const std::vector<std::string>& tokens) {
    std::vector<std::string> lowered;
    lowered.reserve(tokens.size());
    for (const auto& t : tokens) lowered.push_back(to_lower(t));
    std::sort(lowered.begin(), lowered.end());
    return join_tokens(lowered);
}

std::string sorted_token_string(std::string_view text) { return sorted_token_string(tokenize(text)); }

SentenceRecord SentenceRecord::from_text(std::string text) {
    SentenceRecord rec;
    rec.chars = unicode::decode_lossy(text);
    rec.raw_text = std::move(text);
    rec.tokens = tokenize(std::u32string_view(rec.chars));
    rec.char_len = rec.chars.size();
    rec.alpha_ratio = silver::alpha_ratio(std::u32string_view(rec.chars));
    for (const auto& t : rec.tokens) {
        const std::size_t syl = count_syllables(t);
        rec.syllable_count += syl;
        if (syl > 0) ++rec.word_count;
    }
    return rec;
}

}  // namespace silver
