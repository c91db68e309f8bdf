#include "silver/filtering.hpp"

#include <algorithm>
#include <cstdio>

#include "silver/errors.hpp"
#include "silver/unicode.hpp"

namespace silver {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

CheckResult fail(Stage s, std::string detail) { return {false, s, std::move(detail)}; }

bool is_numeric_token(std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_punctuation_token(std::string_view t) {
    const auto cps = unicode::decode_lossy(t);
    return std::none_of(cps.begin(), cps.end(), [](char32_t c) { return unicode::is_alnum(c); });
}

}  // namespace

std::string_view drop_reason_name(DropReason r) {
    switch (r) {
        case DropReason::too_short: return "too_short";
        case DropReason::too_long: return "too_long";
        case DropReason::low_alpha: return "low_alpha";
    }
    return "unknown";
}

std::string_view stage_name(Stage s) {
    switch (s) {
        case Stage::bad_tokens: return "bad_tokens";
        case Stage::non_alphabetical: return "non_alphabetical";
        case Stage::similarity: return "similarity";
        case Stage::partial_similarity: return "partial_similarity";
        case Stage::sorted_similarity: return "sorted_similarity";
        case Stage::compression: return "compression";
        case Stage::simplicity: return "simplicity";
    }
    return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (Stage s : kChainOrder)
        if (stage_name(s) == name) return s;
    return std::nullopt;
}

PreprocessResult preprocess_sentence(const SentenceRecord& s, const FilterConfig& cfg) {
    PreprocessResult out;
    if (s.tokens.size() < cfg.min_tokens) {
        out.dropped = DropReason::too_short;
    } else if (s.tokens.size() > cfg.max_tokens) {
        out.dropped = DropReason::too_long;
    } else if (s.alpha_ratio < cfg.min_alpha_ratio) {
        out.dropped = DropReason::low_alpha;
    }
    if (out.dropped) {
        out.cleaned = s;
        return out;
    }
    auto stripped = strip_figure_refs(s.raw_text);
    out.cleaned = stripped == s.raw_text ? s : SentenceRecord::from_text(std::move(stripped));
    return out;
}

CheckResult check_bad_tokens(const SentenceRecord& candidate, const FilterConfig& cfg,
                             bool generation_failed) {
    if (generation_failed) return fail(Stage::bad_tokens, "generation flagged as failed");
    for (const auto& marker : cfg.unknown_token_markers) {
        if (!marker.empty() && candidate.raw_text.find(marker) != std::string::npos)
            return fail(Stage::bad_tokens, "unknown-token marker \"" + marker + "\"");
    }

    const std::string* run_token = nullptr;
    std::size_t run = 0;
    for (const auto& tok : candidate.tokens) {
        if (is_numeric_token(tok) && tok.size() >= cfg.numeric_min_digits) {
            if (run_token != nullptr && *run_token == tok) {
                ++run;
            } else {
                run_token = &tok;
                run = 1;
            }
            if (run >= cfg.numeric_run_min)
                return fail(Stage::bad_tokens, "numeric token \"" + tok + "\" repeated " +
                                                   std::to_string(run) + " times");
        } else if (!is_punctuation_token(tok)) {
            run_token = nullptr;
            run = 0;
        }
    }
    return {};
}

CheckResult check_non_alphabetical(const SentenceRecord& candidate, const FilterConfig& cfg) {
    if (candidate.alpha_ratio < cfg.min_alpha_ratio)
        return fail(Stage::non_alphabetical, fmt("alpha ratio %.4f < %.4f", candidate.alpha_ratio,
                                                 cfg.min_alpha_ratio));
    return {};
}

namespace {

CheckResult check_whole_similarity(const PairRecord& pair, const FilterConfig& cfg) {
    const double sim = levenshtein_similarity(pair.candidate.chars, pair.complex.chars);
    if (sim < cfg.sim_low) return fail(Stage::similarity, fmt("similarity %.4f < %.4f", sim, cfg.sim_low));
    if (sim > cfg.sim_high) return fail(Stage::similarity, fmt("similarity %.4f > %.4f", sim, cfg.sim_high));
    return {};
}

CheckResult check_partial_similarity(const PairRecord& pair, const FilterConfig& cfg) {
    if (substring_similarity_exceeds(pair.candidate.chars, pair.complex.chars, cfg.substring_sim))
        return fail(Stage::partial_similarity,
                    fmt("substring similarity > %.4f", cfg.substring_sim));
    return {};
}

CheckResult check_sorted_similarity(const PairRecord& pair, const FilterConfig& cfg) {
    const auto a = unicode::decode_lossy(sorted_token_string(pair.candidate.tokens));
    const auto b = unicode::decode_lossy(sorted_token_string(pair.complex.tokens));
    const double sim = levenshtein_similarity(a, b);
    if (sim > cfg.sorted_sim)
        return fail(Stage::sorted_similarity, fmt("sorted-token similarity %.4f > %.4f", sim, cfg.sorted_sim));
    return {};
}

}  // namespace

CheckResult check_similarity_band(const PairRecord& pair, const FilterConfig& cfg) {
    if (auto r = check_whole_similarity(pair, cfg); !r.pass) return r;
    if (auto r = check_partial_similarity(pair, cfg); !r.pass) return r;
    return check_sorted_similarity(pair, cfg);
}

CheckResult check_compression(const PairRecord& pair, const FilterConfig& cfg) {
    const double ratio = compression_ratio(pair);
    if (ratio < cfg.compression_low)
        return fail(Stage::compression, fmt("compression %.4f < %.4f", ratio, cfg.compression_low));
    if (ratio > cfg.compression_high)
        return fail(Stage::compression, fmt("compression %.4f > %.4f", ratio, cfg.compression_high));
    return {};
}

bool simplicity_holds(double fre_complex, double fre_simple, double wordrank_complex,
                      double wordrank_simple, std::optional<int> depth_complex,
                      std::optional<int> depth_simple, const FilterConfig& cfg) {
    const bool depth_active = cfg.depth_criterion_enabled && depth_complex && depth_simple;
    if (cfg.simplicity_strict) {
        return fre_simple > fre_complex || wordrank_simple < wordrank_complex ||
               (depth_active && *depth_simple < *depth_complex);
    }
    return fre_simple >= fre_complex || wordrank_simple <= wordrank_complex ||
           (depth_active && *depth_simple <= *depth_complex);
}

CheckResult check_simplicity(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq) {
    // A side without word tokens has no readability score and cannot be simpler.
    if (pair.candidate.word_count == 0 || pair.complex.word_count == 0)
        return fail(Stage::simplicity, "no word tokens to score");
    const double fre_c = flesch_reading_ease(pair.complex);
    const double fre_s = flesch_reading_ease(pair.candidate);
    const double wr_c = wordrank(pair.complex, freq);
    const double wr_s = wordrank(pair.candidate, freq);
    if (simplicity_holds(fre_c, fre_s, wr_c, wr_s, pair.depth_complex, pair.depth_simple, cfg)) return {};

    char buf[192];
    std::snprintf(buf, sizeof buf, "not simpler: FRE %.2f -> %.2f, WordRank %.3f -> %.3f", fre_c, fre_s,
                  wr_c, wr_s);
    std::string detail = buf;
    if (pair.depth_complex && pair.depth_simple)
        detail += ", depth " + std::to_string(*pair.depth_complex) + " -> " + std::to_string(*pair.depth_simple);
    return fail(Stage::simplicity, std::move(detail));
}

CheckResult check_stage(Stage stage, const PairRecord& pair, const FilterConfig& cfg,
                        const FrequencyTable& freq) {
    switch (stage) {
        case Stage::bad_tokens: return check_bad_tokens(pair.candidate, cfg, pair.failed);
        case Stage::non_alphabetical: return check_non_alphabetical(pair.candidate, cfg);
        case Stage::similarity: return check_whole_similarity(pair, cfg);
        case Stage::partial_similarity: return check_partial_similarity(pair, cfg);
        case Stage::sorted_similarity: return check_sorted_similarity(pair, cfg);
        case Stage::compression:
            if (pair.candidate.char_len == 0 || pair.complex.char_len == 0)
                return fail(Stage::compression, "empty sentence");
            return check_compression(pair, cfg);
        case Stage::simplicity: return check_simplicity(pair, cfg, freq);
    }
    return {};
}

FilterDecision run_filter_chain(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq,
                                std::span<const Stage> order) {
    for (Stage stage : order) {
        auto r = check_stage(stage, pair, cfg, freq);
        if (!r.pass) return FilterDecision::remove(r.stage, std::move(r.detail));
    }
    return FilterDecision::keep();
}

FilterDecision run_filter_chain(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq) {
    return run_filter_chain(pair, cfg, freq, kChainOrder);
}

}  // namespace silver
