#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "silver/filtering.hpp"
#include "silver/kernels.hpp"
#include "silver/metrics.hpp"
#include "silver/pair.hpp"

namespace silver {

// ---------------------------------------------------------------------------
// Pair files
// ---------------------------------------------------------------------------

/// jsonl: one object per line with "complex", "candidate", optional "id" and
/// "failed". tsv: `complex<TAB>candidate`. automatic: decided per line by
/// whether it starts with '{'.
enum class PairFormat { automatic, jsonl, tsv };
PairFormat parse_pair_format(std::string_view name);

/// Throws DataError naming `source:lineno` on malformed or non-UTF-8 input.
PairRecord parse_pair_line(std::string_view line, std::size_t lineno, PairFormat format,
                           const std::string& source);

/// JSONL encoding used for silver output and splits.
std::string format_pair_line(const PairRecord& pair);

/// Reads non-blank lines and remembers their 1-based line numbers.
class LineReader {
public:
    LineReader(std::istream& in, std::string source_name);
    explicit LineReader(const std::filesystem::path& path);

    bool next(std::string& line, std::size_t& lineno);
    const std::string& source_name() const { return source_; }

private:
    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_;
    std::string source_;
    std::size_t lineno_ = 0;
};

/// Streaming pair reader; memory use does not grow with the file.
class PairReader {
public:
    PairReader(std::istream& in, std::string source_name, PairFormat format = PairFormat::automatic);
    explicit PairReader(const std::filesystem::path& path, PairFormat format = PairFormat::automatic);

    std::optional<PairRecord> next();
    /// Raw access for batch parsing.
    bool next_line(std::string& line, std::size_t& lineno) { return lines_.next(line, lineno); }
    PairFormat format() const { return format_; }
    const std::string& source_name() const { return lines_.source_name(); }

private:
    LineReader lines_;
    PairFormat format_;
};

inline PairReader load_pairs(const std::filesystem::path& path, PairFormat format = PairFormat::automatic) {
    return PairReader(path, format);
}

std::vector<PairRecord> read_all_pairs(const std::filesystem::path& path,
                                       PairFormat format = PairFormat::automatic);

// ---------------------------------------------------------------------------
// Dependency parse sidecar
// ---------------------------------------------------------------------------

/// Blocks of `token_index<TAB>head_index` lines (1-based tokens, head 0 =
/// root) separated by blank lines. A pair file's sidecar holds two blocks per
/// record, complex sentence first.
class ParseReader {
public:
    ParseReader(std::istream& in, std::string source_name);
    explicit ParseReader(const std::filesystem::path& path);

    /// Next block, or nullopt at end of file. Throws DataError on bad lines.
    std::optional<DependencyParse> next();

private:
    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_;
    std::string source_;
    std::size_t lineno_ = 0;
};

// ---------------------------------------------------------------------------
// Sampling and splitting
// ---------------------------------------------------------------------------

/// Uniform integer in [0, bound) from a 64-bit engine. Unlike
/// std::uniform_int_distribution its output is the same on every standard
/// library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Reservoir sample of min(n, total) non-blank lines, returned in input order.
std::vector<std::string> sample_lines(std::istream& in, std::size_t n, std::uint64_t seed);
std::vector<SentenceRecord> sample_sentences(std::istream& in, std::size_t n, std::uint64_t seed);

struct SplitSpec {
    double train = 0.64;
    double valid = 0.16;
    double test = 0.20;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless the fractions are non-negative and sum to 1 within 1e-9.
    void validate() const;
    /// "0.64,0.16,0.20"
    static SplitSpec from_fractions(std::string_view text, std::uint64_t seed);
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t valid = 0;
    std::size_t test = 0;
};

/// Validation and test sizes are ceil(n * fraction); training takes the rest.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

/// Indices into the input, one list per split.
struct SplitAssignment {
    std::vector<std::size_t> train;
    std::vector<std::size_t> valid;
    std::vector<std::size_t> test;
};

/// Seeded Fisher-Yates shuffle of [0, n) cut into contiguous train/valid/test runs.
SplitAssignment split_corpus(std::size_t n, const SplitSpec& spec);

// ---------------------------------------------------------------------------
// Statistics and reports
// ---------------------------------------------------------------------------

/// Welford accumulator with population standard deviation.
class RunningStat {
public:
    void add(double x);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double stddev() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct SideStats {
    RunningStat fre;
    RunningStat fkgl;
    RunningStat wordrank;
    RunningStat depth;
    RunningStat char_len;

    void add(const SentenceProfile& p);
};

struct PairStats {
    RunningStat lev_similarity;
    RunningStat bleu;
    RunningStat compression_ratio;

    void add(const PairMetrics& m);
};

struct ReportStatistics {
    /// Complex side of every pair that survived preprocessing.
    SideStats complex_preprocessed;
    /// Both sides and the pair metrics of the kept (silver) pairs.
    SideStats silver_complex;
    SideStats silver_simple;
    PairStats silver_pairs;
};

struct Provenance {
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string started_at;
    std::string finished_at;
};

/// One arithmetic identity checked and recorded in every report.
struct IdentityCheck {
    std::string name;
    std::string expression;
    long long lhs = 0;
    long long rhs = 0;
    bool holds() const { return lhs == rhs; }
};

struct CorpusReport {
    std::string command = "filter";
    bool filtering_applied = true;

    std::size_t input_count = 0;
    std::array<std::size_t, 3> preprocess_dropped{};  // indexed by DropReason
    std::size_t preprocessed_count = 0;
    std::array<std::size_t, kStageCount> stage_removals{};  // indexed by Stage
    std::size_t kept_count = 0;

    ReportStatistics statistics;
    FilterConfig config;
    std::size_t frequency_table_size = 0;
    bool depth_provider = false;
    Provenance provenance;

    std::size_t total_removed() const;
    std::size_t total_dropped() const;
    /// input = dropped + preprocessed, preprocessed = kept + removed.
    bool conservation_holds() const;
    std::vector<IdentityCheck> self_checks() const;

    /// Pretty-printed JSON document mirroring these fields.
    std::string to_text(bool include_timestamps = true) const;
};

/// The corpus-size identities of the original silver-corpus run.
std::vector<IdentityCheck> reference_identities();

/// Statistics of a pair corpus taken as-is (no filtering). Throws
/// UndefinedInput on an empty corpus.
ReportStatistics compute_report_stats(std::span<const PairRecord> pairs, const FrequencyTable& freq);

std::string utc_timestamp();

// ---------------------------------------------------------------------------
// Silver-corpus construction
// ---------------------------------------------------------------------------

struct BuildOptions {
    /// Receives one JSON line per dropped or removed pair.
    std::ostream* audit = nullptr;
    /// Optional depth provider, two parse blocks per input record.
    ParseReader* parses = nullptr;
    bool parallel = true;
    int threads = 0;
    std::size_t batch_size = 4096;
    bool preprocess = true;
};

/// Streams pairs through preprocessing and the filter chain, writing kept
/// pairs to `silver` in input order. Throws std::logic_error if the counts do
/// not conserve; I/O and data errors propagate.
CorpusReport build_silver(PairReader& in, std::ostream& silver, const FilterConfig& cfg,
                          const FrequencyTable& freq, const BuildOptions& options = {});

}  // namespace silver
