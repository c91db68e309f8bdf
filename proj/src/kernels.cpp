#include "silver/kernels.hpp"

#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace silver {

SentenceProfile profile_sentence(const SentenceRecord& s, const FrequencyTable& freq, std::optional<int> depth) {
    SentenceProfile p;
    p.char_len = s.char_len;
    p.depth = depth;
    if (s.word_count > 0) {
        p.fre = flesch_reading_ease(s);
        p.fkgl = fkgl(s);
        p.wordrank = wordrank(s, freq);
    }
    return p;
}

PairOutcome evaluate_pair(const PairRecord& pair, const FilterConfig& cfg, const FrequencyTable& freq) {
    PairOutcome out;
    out.complex = profile_sentence(pair.complex, freq, pair.depth_complex);
    out.decision = run_filter_chain(pair, cfg, freq);
    if (out.decision.kept) out.metrics = compute_pair_metrics(pair, freq);
    return out;
}

void evaluate_pairs_serial(std::span<const PairRecord> pairs, const FilterConfig& cfg,
                           const FrequencyTable& freq, std::span<PairOutcome> out) {
    if (out.size() < pairs.size()) throw std::invalid_argument("outcome span shorter than pair span");
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = evaluate_pair(pairs[i], cfg, freq);
}

void evaluate_pairs_parallel(std::span<const PairRecord> pairs, const FilterConfig& cfg,
                             const FrequencyTable& freq, std::span<PairOutcome> out, int threads) {
    if (out.size() < pairs.size()) throw std::invalid_argument("outcome span shorter than pair span");
#ifdef _OPENMP
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
    // Exceptions must not escape an OpenMP region; keep the first by index.
    std::exception_ptr first_error;
    std::ptrdiff_t first_error_index = n;

#pragma omp parallel for schedule(dynamic, 32) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = evaluate_pair(pairs[i], cfg, freq);
        } catch (...) {
#pragma omp critical(silver_kernel_error)
            {
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    (void)threads;
    evaluate_pairs_serial(pairs, cfg, freq, out);
#endif
}

int default_thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace silver
