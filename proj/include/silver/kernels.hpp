#pragma once

#include <optional>
#include <span>

#include "silver/filtering.hpp"
#include "silver/metrics.hpp"

// Batch kernels: the per-pair filter chain and its metrics over a block of
// already-preprocessed pairs. The serial version is the reference the OpenMP
// version is tested against; both write outcome[i] for pair[i] and nothing
// else, so results are identical regardless of thread count.
namespace silver {

/// Readability profile of one side of a pair. Scores are absent when the
/// sentence has no word tokens.
struct SentenceProfile {
    std::optional<double> fre;
    std::optional<double> fkgl;
    std::optional<double> wordrank;
    std::optional<int> depth;
    std::size_t char_len = 0;
};

SentenceProfile profile_sentence(const SentenceRecord& s, const FrequencyTable& freq,
                                 std::optional<int> depth = std::nullopt);

struct PairOutcome {
    FilterDecision decision;
    SentenceProfile complex;
    /// Full pair metrics, filled for kept pairs only.
    std::optional<PairMetrics> metrics;
};

PairOutcome evaluate_pair(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq);

void evaluate_pairs_serial(std::span<const PairRecord> pairs, const FilterConfig& cfg,
                           const FrequencyTable& freq, std::span<PairOutcome> out);

/// OpenMP fan-out of evaluate_pair. `threads` <= 0 uses the OpenMP default.
void evaluate_pairs_parallel(std::span<const PairRecord> pairs, const FilterConfig& cfg,
                             const FrequencyTable& freq, std::span<PairOutcome> out, int threads = 0);

/// Number of threads evaluate_pairs_parallel would use by default.
int default_thread_count();

}  // namespace silver
