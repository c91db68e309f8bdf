#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

#include "silver/corpus.hpp"
#include "silver/errors.hpp"
#include "silver/json_io.hpp"

namespace silver {

void RunningStat::add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningStat::stddev() const {
    if (n_ == 0) return 0.0;
    return std::sqrt(std::max(0.0, m2_ / static_cast<double>(n_)));
}

void SideStats::add(const SentenceProfile& p) {
    if (p.fre) fre.add(*p.fre);
    if (p.fkgl) fkgl.add(*p.fkgl);
    if (p.wordrank) wordrank.add(*p.wordrank);
    if (p.depth) depth.add(*p.depth);
    char_len.add(static_cast<double>(p.char_len));
}

void PairStats::add(const PairMetrics& m) {
    lev_similarity.add(m.lev_similarity);
    bleu.add(m.bleu);
    compression_ratio.add(m.compression_ratio);
}

ReportStatistics compute_report_stats(std::span<const PairRecord> pairs, const FrequencyTable& freq) {
    if (pairs.empty()) throw UndefinedInput("compute_report_stats: empty corpus");
    ReportStatistics stats;
    for (const auto& pair : pairs) {
        stats.silver_complex.add(profile_sentence(pair.complex, freq, pair.depth_complex));
        stats.silver_simple.add(profile_sentence(pair.candidate, freq, pair.depth_simple));

        // Pair metrics need both sides non-empty; BLEU needs a candidate token.
        if (pair.complex.char_len == 0 || pair.candidate.char_len == 0) continue;
        stats.silver_pairs.lev_similarity.add(levenshtein_similarity(pair.candidate.chars, pair.complex.chars));
        stats.silver_pairs.compression_ratio.add(compression_ratio(pair));
        if (!pair.candidate.tokens.empty() && !pair.complex.tokens.empty()) {
            const TokenList refs[] = {pair.complex.tokens};
            stats.silver_pairs.bleu.add(bleu(pair.candidate.tokens, refs));
        }
    }
    return stats;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<IdentityCheck> reference_identities() {
    constexpr long long preprocessed = 425'148;
    constexpr long long removals[] = {8'602, 695, 38'217, 5'937, 18'807, 62'926, 1'999};
    long long removed = 0;
    for (auto r : removals) removed += r;
    return {
        {"reference_chain_conservation",
         "425148 - (8602 + 695 + 38217 + 5937 + 18807 + 62926 + 1999) = 287965", preprocessed - removed, 287'965},
        {"reference_split_sizes", "184297 + 46075 + 57593 = 287965", 184'297 + 46'075 + 57'593, 287'965},
    };
}

std::size_t CorpusReport::total_removed() const {
    std::size_t total = 0;
    for (auto r : stage_removals) total += r;
    return total;
}

std::size_t CorpusReport::total_dropped() const {
    std::size_t total = 0;
    for (auto r : preprocess_dropped) total += r;
    return total;
}

std::vector<IdentityCheck> CorpusReport::self_checks() const {
    return {
        {"input_conservation", "input_count = preprocess_dropped + preprocessed_count",
         static_cast<long long>(input_count), static_cast<long long>(total_dropped() + preprocessed_count)},
        {"chain_conservation", "kept_count = preprocessed_count - sum(stage_removals)",
         static_cast<long long>(kept_count),
         static_cast<long long>(preprocessed_count) - static_cast<long long>(total_removed())},
    };
}

bool CorpusReport::conservation_holds() const {
    for (const auto& c : self_checks())
        if (!c.holds()) return false;
    return true;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson summary(const RunningStat& s) {
    ojson j;
    j["count"] = s.count();
    if (s.count() == 0) {
        j["mean"] = nullptr;
        j["std"] = nullptr;
    } else {
        j["mean"] = s.mean();
        j["std"] = s.stddev();
    }
    return j;
}

ojson side_json(const SideStats& s) {
    return ojson{
        {"fre", summary(s.fre)},           {"fkgl", summary(s.fkgl)},         {"wordrank", summary(s.wordrank)},
        {"depth", summary(s.depth)},       {"char_len", summary(s.char_len)},
    };
}

ojson identity_json(const IdentityCheck& c) {
    return ojson{{"name", c.name}, {"expression", c.expression}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds()}};
}

}  // namespace

std::string CorpusReport::to_text(bool include_timestamps) const {
    ojson j;
    j["command"] = command;
    j["filtering_applied"] = filtering_applied;
    j["input_count"] = input_count;
    j["preprocess_dropped"] = ojson{
        {std::string(drop_reason_name(DropReason::too_short)), preprocess_dropped[0]},
        {std::string(drop_reason_name(DropReason::too_long)), preprocess_dropped[1]},
        {std::string(drop_reason_name(DropReason::low_alpha)), preprocess_dropped[2]},
    };
    j["preprocessed_count"] = preprocessed_count;
    ojson removals = ojson::object();
    for (Stage s : kChainOrder) removals[std::string(stage_name(s))] = stage_removals[static_cast<std::size_t>(s)];
    j["stage_removals"] = removals;
    j["kept_count"] = kept_count;

    ojson checks = ojson::array();
    for (const auto& c : self_checks()) checks.push_back(identity_json(c));
    j["self_checks"] = checks;
    ojson refs = ojson::array();
    for (const auto& c : reference_identities()) refs.push_back(identity_json(c));
    j["reference_identities"] = refs;
    j["reference_notes"] = ojson::array({
        "The reference run's bronze-corpus size of 426963 does not equal its 425148 preprocessed sentences; "
        "the chain identity above uses 425148.",
    });

    j["statistics"] = ojson{
        {"std_convention", "population (divide by N)"},
        {"complex_preprocessed", side_json(statistics.complex_preprocessed)},
        {"silver_complex", side_json(statistics.silver_complex)},
        {"silver_simple", side_json(statistics.silver_simple)},
        {"silver_pairs",
         ojson{
             {"lev_similarity", summary(statistics.silver_pairs.lev_similarity)},
             {"bleu", summary(statistics.silver_pairs.bleu)},
             {"compression_ratio", summary(statistics.silver_pairs.compression_ratio)},
         }},
    };

    j["metric_settings"] = ojson{
        {"tokenizer", "rule-based; whitespace, punctuation and numeric splitting"},
        {"syllables", "vowel groups [aeiouy], minus silent final e after a consonant, at least 1 per word"},
        {"lev_similarity", "1 - distance / (len_a + len_b), characters"},
        {"wordrank", "third quartile (linear interpolation) of ln(rank); out-of-vocabulary rank = max rank + 1"},
        {"bleu", "sentence BLEU, n = 1..4, add-one smoothing for n > 1, complex sentence as reference"},
        {"compression_ratio", "candidate characters / complex characters"},
        {"readability_caveat",
         "FKGL uses the standard grade-level formula, so single patent sentences land roughly between 5 and 30; "
         "FKGL figures near 60 seen elsewhere are on an FRE-like scale and are not comparable"},
        {"preprocess_order", "length and alphabetic-ratio checks run before figure-reference stripping"},
        {"frequency_table_size", frequency_table_size},
        {"depth_provider", depth_provider},
        {"depth_criterion_active", depth_provider && config.depth_criterion_enabled},
    };
    j["config"] = config_to_json(config);

    ojson prov;
    prov["inputs"] = provenance.inputs;
    prov["seed"] = provenance.seed ? ojson(*provenance.seed) : ojson(nullptr);
    prov["threads"] = provenance.threads;
    if (include_timestamps) {
        prov["started_at"] = provenance.started_at;
        prov["finished_at"] = provenance.finished_at;
    }
    j["provenance"] = prov;
    return j.dump(2) + "\n";
}

}  // namespace silver
