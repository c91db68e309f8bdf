#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "silver/pair.hpp"
#include "silver/textcore.hpp"

namespace silver {

using TokenList = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Word frequency ranks
// ---------------------------------------------------------------------------

/// Word -> 1-based frequency rank (1 = most frequent). Immutable after
/// construction. Lookups are lowercased; unknown words get default_rank(),
/// which is one past the largest rank present.
class FrequencyTable {
public:
    FrequencyTable() = default;
    explicit FrequencyTable(std::unordered_map<std::string, std::uint64_t> ranks);

    /// Reads `word<TAB>rank` lines; blank lines and lines starting with '#'
    /// are ignored. Throws DataError naming the offending line.
    static FrequencyTable load(const std::filesystem::path& path);
    static FrequencyTable parse(std::istream& in, const std::string& source_name);

    std::uint64_t rank(std::string_view word) const;
    std::uint64_t default_rank() const noexcept { return default_rank_; }
    std::size_t size() const noexcept { return ranks_.size(); }
    bool empty() const noexcept { return ranks_.empty(); }

private:
    std::unordered_map<std::string, std::uint64_t> ranks_;
    std::uint64_t default_rank_ = 1;
};

// ---------------------------------------------------------------------------
// Readability and lexical complexity
// ---------------------------------------------------------------------------

/// 206.835 - 1.015 * words - 84.6 * syllables/words, with the sentence taken
/// as exactly one sentence and only letter-bearing tokens counted as words.
/// Throws UndefinedInput when the sentence has no word tokens.
double flesch_reading_ease(const SentenceRecord& s);

/// 0.39 * words + 11.8 * syllables/words - 15.59.
double fkgl(const SentenceRecord& s);

/// Third quartile (linear interpolation) of ln(rank) over the word tokens.
double wordrank(const SentenceRecord& s, const FrequencyTable& freq);

/// Linear-interpolation quantile of an unsorted sample, q in [0,1].
double quantile_linear(std::vector<double> values, double q);

// ---------------------------------------------------------------------------
// Edit-distance similarity
// ---------------------------------------------------------------------------

std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b);

/// 1 - lev(a,b) / (|a| + |b|); 1 when both are empty.
double levenshtein_similarity(std::u32string_view a, std::u32string_view b);
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Window lengths scanned by the substring similarity: [floor(0.98 m), ceil(1.02 m)]
/// for a candidate of m scalars, clipped to the original's length.
struct WindowBand {
    std::size_t lo = 0;
    std::size_t hi = 0;
};
WindowBand substring_window_band(std::size_t candidate_len, std::size_t original_len);

/// Best levenshtein_similarity between the candidate and any contiguous window
/// of the original whose length lies in substring_window_band(). When the
/// original is shorter than the band, the whole original is the only window.
double max_substring_similarity(std::u32string_view candidate, std::u32string_view original);
double max_substring_similarity(std::string_view candidate, std::string_view original);

/// Same decision as `max_substring_similarity(c, o) > threshold`, but first
/// rules pairs out with a semi-global alignment lower bound.
bool substring_similarity_exceeds(std::u32string_view candidate, std::u32string_view original,
                                  double threshold);

/// Minimum edit distance between the candidate and any substring of the
/// original (free start and end in the original).
std::size_t semiglobal_distance(std::u32string_view candidate, std::u32string_view original);

/// candidate.char_len / complex.char_len. Throws UndefinedInput if either side is empty.
double compression_ratio(const PairRecord& pair);

// ---------------------------------------------------------------------------
// BLEU and SARI
// ---------------------------------------------------------------------------

inline constexpr int kMaxNgram = 4;

/// Sufficient statistics for BLEU; sentence stats add up to corpus stats.
struct BleuStats {
    std::array<std::uint64_t, kMaxNgram> matches{};
    std::array<std::uint64_t, kMaxNgram> totals{};
    std::uint64_t candidate_len = 0;
    std::uint64_t reference_len = 0;

    BleuStats& operator+=(const BleuStats& other);
};

/// Clipped n-gram matches against the references; the reference length is the
/// one closest to the candidate (shorter wins ties).
BleuStats bleu_stats(const TokenList& candidate, std::span<const TokenList> references);

/// Geometric mean of the modified precisions times the brevity penalty, in
/// [0,100]. Orders above one use add-one smoothing; no unigram match scores 0.
double bleu_from_stats(const BleuStats& stats);

double bleu(const TokenList& candidate, std::span<const TokenList> references);

/// Per-order operation scores, each in [0,1].
struct SariBreakdown {
    std::array<double, kMaxNgram> add_f1{};
    std::array<double, kMaxNgram> keep_f1{};
    std::array<double, kMaxNgram> delete_precision{};
    double score = 0.0;  // [0,100]
};

/// Sentence-level SARI. A precision or recall whose denominator set is empty
/// counts as 1 (nothing to do, nothing done wrong).
SariBreakdown sari_breakdown(const TokenList& source, const TokenList& candidate,
                             std::span<const TokenList> references);
double sari(const TokenList& source, const TokenList& candidate,
            std::span<const TokenList> references);

// ---------------------------------------------------------------------------
// Syntactic depth
// ---------------------------------------------------------------------------

/// heads[i] is the head of token i+1 (1-based); 0 marks the root.
struct DependencyParse {
    std::vector<int> heads;
};

/// Edges on the longest root-to-leaf path. Throws MalformedParse for empty
/// parses, zero or several roots, out-of-range heads and cycles.
int dependency_depth(const DependencyParse& parse);

// ---------------------------------------------------------------------------
// Pair-level bundle
// ---------------------------------------------------------------------------

struct PairMetrics {
    double fre_complex = 0.0;
    double fre_simple = 0.0;
    double fkgl_complex = 0.0;
    double fkgl_simple = 0.0;
    double wordrank_complex = 0.0;
    double wordrank_simple = 0.0;
    std::optional<int> depth_complex;
    std::optional<int> depth_simple;
    double lev_similarity = 0.0;
    double compression_ratio = 0.0;
    double bleu = 0.0;
};

/// Every metric of the pair; the complex sentence is the BLEU reference.
PairMetrics compute_pair_metrics(const PairRecord& pair, const FrequencyTable& freq);

}  // namespace silver
