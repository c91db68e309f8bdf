#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>

#include "silver/errors.hpp"
#include "silver/metrics.hpp"

namespace silver {

namespace {

using NgramCounts = std::map<std::string, std::uint64_t>;

std::string ngram_key(const TokenList& tokens, std::size_t start, std::size_t n) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) key.push_back('\x1f');
        key += tokens[start + k];
    }
    return key;
}

template <typename Map>
void add_ngrams(const TokenList& tokens, std::size_t n, Map& counts, std::uint64_t weight = 1) {
    if (tokens.size() < n) return;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) counts[ngram_key(tokens, i, n)] += weight;
}

}  // namespace

// ---------------------------------------------------------------------------
// BLEU
// ---------------------------------------------------------------------------

BleuStats& BleuStats::operator+=(const BleuStats& other) {
    for (int n = 0; n < kMaxNgram; ++n) {
        matches[n] += other.matches[n];
        totals[n] += other.totals[n];
    }
    candidate_len += other.candidate_len;
    reference_len += other.reference_len;
    return *this;
}

BleuStats bleu_stats(const TokenList& candidate, std::span<const TokenList> references) {
    if (candidate.empty()) throw UndefinedInput("bleu: empty candidate");
    if (references.empty()) throw UndefinedInput("bleu: no references");

    BleuStats stats;
    stats.candidate_len = candidate.size();

    std::size_t best_ref = references.front().size();
    for (const auto& ref : references) {
        const auto diff = [&](std::size_t len) {
            return len > candidate.size() ? len - candidate.size() : candidate.size() - len;
        };
        if (diff(ref.size()) < diff(best_ref) ||
            (diff(ref.size()) == diff(best_ref) && ref.size() < best_ref))
            best_ref = ref.size();
    }
    stats.reference_len = best_ref;

    for (std::size_t n = 1; n <= kMaxNgram; ++n) {
        std::unordered_map<std::string, std::uint64_t> cand_counts;
        add_ngrams(candidate, n, cand_counts);
        std::unordered_map<std::string, std::uint64_t> max_ref;
        for (const auto& ref : references) {
            std::unordered_map<std::string, std::uint64_t> ref_counts;
            add_ngrams(ref, n, ref_counts);
            for (const auto& [gram, count] : ref_counts) {
                auto& slot = max_ref[gram];
                slot = std::max(slot, count);
            }
        }
        std::uint64_t matched = 0;
        for (const auto& [gram, count] : cand_counts) {
            auto it = max_ref.find(gram);
            if (it != max_ref.end()) matched += std::min(count, it->second);
        }
        stats.matches[n - 1] = matched;
        stats.totals[n - 1] = candidate.size() >= n ? candidate.size() - n + 1 : 0;
    }
    return stats;
}

double bleu_from_stats(const BleuStats& stats) {
    if (stats.candidate_len == 0 || stats.totals[0] == 0) throw UndefinedInput("bleu: empty candidate");
    if (stats.matches[0] == 0) return 0.0;

    double log_sum = std::log(static_cast<double>(stats.matches[0]) / static_cast<double>(stats.totals[0]));
    for (int n = 1; n < kMaxNgram; ++n) {
        log_sum += std::log(static_cast<double>(stats.matches[n] + 1) /
                            static_cast<double>(stats.totals[n] + 1));
    }
    const double c = static_cast<double>(stats.candidate_len);
    const double r = static_cast<double>(stats.reference_len);
    const double log_bp = c < r ? 1.0 - r / c : 0.0;
    return 100.0 * std::exp(log_bp + log_sum / kMaxNgram);
}

double bleu(const TokenList& candidate, std::span<const TokenList> references) {
    return bleu_from_stats(bleu_stats(candidate, references));
}

// ---------------------------------------------------------------------------
// SARI
// ---------------------------------------------------------------------------

namespace {

NgramCounts scaled(const NgramCounts& counts, std::uint64_t factor) {
    NgramCounts out;
    for (const auto& [gram, count] : counts) out.emplace(gram, count * factor);
    return out;
}

// Multiset intersection (min) and difference (saturating), positive counts only.
NgramCounts intersect(const NgramCounts& a, const NgramCounts& b) {
    NgramCounts out;
    for (const auto& [gram, count] : a) {
        auto it = b.find(gram);
        if (it != b.end()) {
            const auto v = std::min(count, it->second);
            if (v > 0) out.emplace(gram, v);
        }
    }
    return out;
}

NgramCounts subtract(const NgramCounts& a, const NgramCounts& b) {
    NgramCounts out;
    for (const auto& [gram, count] : a) {
        auto it = b.find(gram);
        const std::uint64_t other = it == b.end() ? 0 : it->second;
        if (count > other) out.emplace(gram, count - other);
    }
    return out;
}

std::uint64_t count_of(const NgramCounts& c, const std::string& gram) {
    auto it = c.find(gram);
    return it == c.end() ? 0 : it->second;
}

double f1(double p, double r) { return (p > 0.0 || r > 0.0) ? 2.0 * p * r / (p + r) : 0.0; }

struct OrderScores {
    double keep = 0.0;
    double del = 0.0;
    double add = 0.0;
};

OrderScores sari_order(const NgramCounts& source, const NgramCounts& cand, const NgramCounts& refs,
                       std::uint64_t num_refs) {
    const NgramCounts source_rep = scaled(source, num_refs);
    const NgramCounts cand_rep = scaled(cand, num_refs);
    OrderScores out;

    // KEEP: source n-grams the candidate retained, judged against the references.
    const NgramCounts keep = intersect(source_rep, cand_rep);
    const NgramCounts keep_good = intersect(keep, refs);
    const NgramCounts keep_all = intersect(source_rep, refs);
    double keep_p = 1.0;
    double keep_r = 1.0;
    if (!keep.empty()) {
        double acc = 0.0;
        for (const auto& [gram, count] : keep)
            acc += static_cast<double>(count_of(keep_good, gram)) / static_cast<double>(count);
        keep_p = acc / static_cast<double>(keep.size());
    }
    if (!keep_all.empty()) {
        double acc = 0.0;
        for (const auto& [gram, good] : keep_good)
            acc += static_cast<double>(good) / static_cast<double>(count_of(keep_all, gram));
        keep_r = acc / static_cast<double>(keep_all.size());
    }
    out.keep = f1(keep_p, keep_r);

    // DELETE: precision only.
    const NgramCounts deleted = subtract(source_rep, cand_rep);
    const NgramCounts del_good = subtract(deleted, refs);
    double del_p = 1.0;
    if (!deleted.empty()) {
        double acc = 0.0;
        for (const auto& [gram, count] : deleted)
            acc += static_cast<double>(count_of(del_good, gram)) / static_cast<double>(count);
        del_p = acc / static_cast<double>(deleted.size());
    }
    out.del = del_p;

    // ADD: set-based, n-grams new to the candidate.
    std::size_t added = 0;
    std::size_t added_good = 0;
    for (const auto& [gram, _] : cand) {
        if (source.contains(gram)) continue;
        ++added;
        if (refs.contains(gram)) ++added_good;
    }
    std::size_t demanded = 0;
    for (const auto& [gram, _] : refs)
        if (!source.contains(gram)) ++demanded;
    const double add_p = added > 0 ? static_cast<double>(added_good) / static_cast<double>(added) : 1.0;
    const double add_r =
        demanded > 0 ? static_cast<double>(added_good) / static_cast<double>(demanded) : 1.0;
    out.add = f1(add_p, add_r);
    return out;
}

}  // namespace

SariBreakdown sari_breakdown(const TokenList& source, const TokenList& candidate,
                             std::span<const TokenList> references) {
    if (candidate.empty()) throw UndefinedInput("sari: empty candidate");
    if (source.empty()) throw UndefinedInput("sari: empty source");
    if (references.empty()) throw UndefinedInput("sari: no references");
    for (const auto& ref : references)
        if (ref.empty()) throw UndefinedInput("sari: empty reference");

    SariBreakdown out;
    double keep_sum = 0.0, del_sum = 0.0, add_sum = 0.0;
    for (std::size_t n = 1; n <= kMaxNgram; ++n) {
        NgramCounts s, c, r;
        add_ngrams(source, n, s);
        add_ngrams(candidate, n, c);
        for (const auto& ref : references) add_ngrams(ref, n, r);
        const auto scores = sari_order(s, c, r, references.size());
        out.keep_f1[n - 1] = scores.keep;
        out.delete_precision[n - 1] = scores.del;
        out.add_f1[n - 1] = scores.add;
        keep_sum += scores.keep;
        del_sum += scores.del;
        add_sum += scores.add;
    }
    const double orders = kMaxNgram;
    out.score = 100.0 * (keep_sum / orders + del_sum / orders + add_sum / orders) / 3.0;
    return out;
}

double sari(const TokenList& source, const TokenList& candidate, std::span<const TokenList> references) {
    return sari_breakdown(source, candidate, references).score;
}

}  // namespace silver
