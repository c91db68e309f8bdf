#include <algorithm>
#include <cmath>

#include "silver/errors.hpp"
#include "silver/metrics.hpp"

namespace silver {

namespace {

void require_words(const SentenceRecord& s, const char* metric) {
    if (s.word_count == 0)
        throw UndefinedInput(std::string(metric) + ": sentence has no word tokens");
}

}  // namespace

double flesch_reading_ease(const SentenceRecord& s) {
    require_words(s, "flesch_reading_ease");
    const double words = static_cast<double>(s.word_count);
    const double syllables_per_word = static_cast<double>(s.syllable_count) / words;
    return 206.835 - 1.015 * words - 84.6 * syllables_per_word;
}

double fkgl(const SentenceRecord& s) {
    require_words(s, "fkgl");
    const double words = static_cast<double>(s.word_count);
    const double syllables_per_word = static_cast<double>(s.syllable_count) / words;
    return 0.39 * words + 11.8 * syllables_per_word - 15.59;
}

double quantile_linear(std::vector<double> values, double q) {
    if (values.empty()) throw UndefinedInput("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(pos));
    const std::size_t above = std::min(below + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(below);
    return values[below] + frac * (values[above] - values[below]);
}

double wordrank(const SentenceRecord& s, const FrequencyTable& freq) {
    require_words(s, "wordrank");
    std::vector<double> log_ranks;
    log_ranks.reserve(s.word_count);
    for (const auto& token : s.tokens) {
        if (!has_letter(token)) continue;
        log_ranks.push_back(std::log(static_cast<double>(freq.rank(token))));
    }
    return quantile_linear(std::move(log_ranks), 0.75);
}

}  // namespace silver
