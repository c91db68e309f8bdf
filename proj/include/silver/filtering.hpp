#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "silver/metrics.hpp"
#include "silver/pair.hpp"
#include "silver/textcore.hpp"

namespace silver {

/// Every threshold of the preprocessing gate and the candidate filter chain.
/// Removal comparisons are strict, so values sitting exactly on a threshold
/// are kept.
struct FilterConfig {
    // preprocessing (complex side)
    std::size_t min_tokens = 5;
    std::size_t max_tokens = 55;
    double min_alpha_ratio = 0.60;

    // bad tokens
    std::vector<std::string> unknown_token_markers{"<unk>", "<UNK>", "[UNK]", "\xEF\xBF\xBD"};
    std::size_t numeric_run_min = 3;
    std::size_t numeric_min_digits = 4;

    // similarity
    double sim_low = 0.25;
    double sim_high = 0.90;
    double substring_sim = 0.99;
    double sorted_sim = 0.90;

    // compression
    double compression_low = 0.5;
    double compression_high = 1.5;

    // simplicity
    bool simplicity_strict = true;
    bool depth_criterion_enabled = true;

    /// Throws ConfigError when an invariant on the thresholds is violated.
    void validate() const;

    std::string to_text() const;
    static FilterConfig from_text(std::string_view json_text, const std::string& source_name = "config");
    static FilterConfig load(const std::filesystem::path& path);

    /// Sets one field from its textual value, e.g. ("sim_low", "0.3"). Accepts
    /// dashes in place of underscores. Throws ConfigError on unknown fields or
    /// unparsable values.
    void set_field(std::string_view name, std::string_view value);
    static const std::vector<std::string>& field_names();

    bool operator==(const FilterConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Preprocessing gate
// ---------------------------------------------------------------------------

enum class DropReason { too_short, too_long, low_alpha };
std::string_view drop_reason_name(DropReason r);

struct PreprocessResult {
    std::optional<DropReason> dropped;  // nullopt = kept
    SentenceRecord cleaned;

    bool kept() const { return !dropped.has_value(); }
};

/// Length and alphabetic-ratio checks on the text as given; survivors get
/// their figure references stripped.
PreprocessResult preprocess_sentence(const SentenceRecord& s, const FilterConfig& cfg);

// ---------------------------------------------------------------------------
// Candidate filter chain
// ---------------------------------------------------------------------------

enum class Stage {
    bad_tokens,
    non_alphabetical,
    similarity,
    partial_similarity,
    sorted_similarity,
    compression,
    simplicity,
};
inline constexpr std::size_t kStageCount = 7;
inline constexpr std::array<Stage, kStageCount> kChainOrder{
    Stage::bad_tokens,        Stage::non_alphabetical, Stage::similarity, Stage::partial_similarity,
    Stage::sorted_similarity, Stage::compression,      Stage::simplicity,
};

std::string_view stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view name);

struct FilterDecision {
    bool kept = true;
    std::optional<Stage> stage;  // set iff removed
    std::string detail;

    static FilterDecision keep() { return {}; }
    static FilterDecision remove(Stage s, std::string detail) { return {false, s, std::move(detail)}; }

    bool operator==(const FilterDecision&) const = default;
};

struct CheckResult {
    bool pass = true;
    Stage stage = Stage::bad_tokens;  // meaningful only when !pass
    std::string detail;
};

/// Unknown-token markers anywhere in the text, or the same numeric token of
/// numeric_min_digits+ digits repeated numeric_run_min+ times in a row
/// (punctuation between repeats does not break the run). A pair flagged as a
/// failed generation also lands here.
CheckResult check_bad_tokens(const SentenceRecord& candidate, const FilterConfig& cfg,
                             bool generation_failed = false);
CheckResult check_non_alphabetical(const SentenceRecord& candidate, const FilterConfig& cfg);

/// Whole-pair similarity band, then substring similarity, then sorted-token
/// similarity; reports the first of the three that fails.
CheckResult check_similarity_band(const PairRecord& pair, const FilterConfig& cfg);
CheckResult check_compression(const PairRecord& pair, const FilterConfig& cfg);
CheckResult check_simplicity(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq);

/// Disjunction of the simplicity criteria on precomputed scores.
bool simplicity_holds(double fre_complex, double fre_simple, double wordrank_complex,
                      double wordrank_simple, std::optional<int> depth_complex,
                      std::optional<int> depth_simple, const FilterConfig& cfg);

/// Single-stage predicate; the chain is a fold of these.
CheckResult check_stage(Stage stage, const PairRecord& pair, const FilterConfig& cfg,
                        const FrequencyTable& freq);

/// Applies the stages in kChainOrder and charges the first failure.
FilterDecision run_filter_chain(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq);

/// Same, with a caller-chosen stage order (used to study order sensitivity).
FilterDecision run_filter_chain(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq,
                                std::span<const Stage> order);

}  // namespace silver
