#include <algorithm>
#include <cstdint>
#include <vector>

#include "silver/errors.hpp"
#include "silver/metrics.hpp"
#include "silver/unicode.hpp"

namespace silver {

namespace {

// Bit-parallel edit distance (Myers 1999, blocked form after Hyyro). Bit i of
// a block word stands for pattern position 64 * block + i.

constexpr std::size_t kWord = 64;

// Per-character match masks. The backing storage is thread-local and is left
// all-zero when the table goes out of scope, so building one costs O(m).
class PeqTable {
public:
    explicit PeqTable(std::u32string_view pattern)
        : pattern_(pattern), blocks_((pattern.size() + kWord - 1) / kWord), st_(state()) {
        if (st_.ascii.size() < 128 * blocks_) st_.ascii.resize(128 * blocks_, 0);
        if (st_.zeros.size() < blocks_) st_.zeros.resize(blocks_, 0);
        st_.other_keys.clear();
        st_.other_masks.clear();
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            const std::uint64_t bit = std::uint64_t{1} << (i % kWord);
            masks_for(pattern[i])[i / kWord] |= bit;
        }
    }
    ~PeqTable() {
        for (const char32_t c : pattern_)
            if (c < 128)
                for (std::size_t b = 0; b < blocks_; ++b) st_.ascii[c * blocks_ + b] = 0;
    }
    PeqTable(const PeqTable&) = delete;
    PeqTable& operator=(const PeqTable&) = delete;

    std::size_t blocks() const { return blocks_; }

    const std::uint64_t* operator()(char32_t c) const {
        if (c < 128) return &st_.ascii[c * blocks_];
        for (std::size_t k = 0; k < st_.other_keys.size(); ++k)
            if (st_.other_keys[k] == c) return &st_.other_masks[k * blocks_];
        return st_.zeros.data();
    }

private:
    struct State {
        std::vector<std::uint64_t> ascii;
        std::vector<char32_t> other_keys;
        std::vector<std::uint64_t> other_masks;
        std::vector<std::uint64_t> zeros;
    };
    static State& state() {
        thread_local State s;
        return s;
    }

    std::uint64_t* masks_for(char32_t c) {
        if (c < 128) return &st_.ascii[c * blocks_];
        for (std::size_t k = 0; k < st_.other_keys.size(); ++k)
            if (st_.other_keys[k] == c) return &st_.other_masks[k * blocks_];
        st_.other_keys.push_back(c);
        st_.other_masks.resize(st_.other_masks.size() + blocks_, 0);
        return &st_.other_masks[st_.other_masks.size() - blocks_];
    }

    std::u32string_view pattern_;
    std::size_t blocks_;
    State& st_;
};

// One column step of one block. hin and the return value are the horizontal
// deltas (-1, 0 or +1) entering above the block and leaving below `high`.
inline int advance_block(std::uint64_t& pv, std::uint64_t& mv, std::uint64_t eq, int hin, std::uint64_t high) {
    const std::uint64_t hin_neg = hin < 0 ? 1 : 0;
    const std::uint64_t xv = eq | mv;
    eq |= hin_neg;
    const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
    std::uint64_t ph = mv | ~(xh | pv);
    std::uint64_t mh = pv & xh;
    const int hout = static_cast<int>((ph & high) != 0) - static_cast<int>((mh & high) != 0);
    ph = (ph << 1) | static_cast<std::uint64_t>(hin > 0);
    mh = (mh << 1) | hin_neg;
    pv = mh | ~(xv | ph);
    mv = ph & xv;
    return hout;
}

// Column-by-column distance of the whole pattern against growing prefixes of
// `text`. With `global` the top row grows by one per column (edit distance);
// otherwise it stays zero (the match may start anywhere). Calls
// visit(len, D[m][len]) after each column and stops when it returns false.
class ColumnRunner {
public:
    ColumnRunner(const PeqTable& peq, std::size_t m)
        : peq_(peq), m_(m), pv_(peq.blocks()), mv_(peq.blocks()),
          last_high_(std::uint64_t{1} << ((m - 1) % kWord)) {}

    template <class Visit>
    void run(std::u32string_view text, bool global, Visit&& visit) {
        const std::size_t nb = pv_.size();
        std::fill(pv_.begin(), pv_.end(), ~std::uint64_t{0});
        std::fill(mv_.begin(), mv_.end(), 0);
        std::size_t score = m_;
        for (std::size_t j = 0; j < text.size(); ++j) {
            const std::uint64_t* eq = peq_(text[j]);
            int h = global ? 1 : 0;
            for (std::size_t b = 0; b + 1 < nb; ++b) h = advance_block(pv_[b], mv_[b], eq[b], h, std::uint64_t{1} << 63);
            h = advance_block(pv_[nb - 1], mv_[nb - 1], eq[nb - 1], h, last_high_);
            score = static_cast<std::size_t>(static_cast<long long>(score) + h);
            if (!visit(j + 1, score)) return;
        }
    }

private:
    const PeqTable& peq_;
    std::size_t m_;
    std::vector<std::uint64_t> pv_, mv_;
    std::uint64_t last_high_;
};

}  // namespace

std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b) {
    // Common prefix and suffix never contribute edits.
    while (!a.empty() && !b.empty() && a.front() == b.front()) {
        a.remove_prefix(1);
        b.remove_prefix(1);
    }
    while (!a.empty() && !b.empty() && a.back() == b.back()) {
        a.remove_suffix(1);
        b.remove_suffix(1);
    }
    if (a.size() > b.size()) std::swap(a, b);
    if (a.empty()) return b.size();

    if (a.size() <= kWord && std::all_of(a.begin(), a.end(), [](char32_t c) { return c < 128; })) {
        // Single word over ASCII: masks live in a small table that is reset
        // before returning.
        thread_local std::uint64_t table[128];
        for (std::size_t i = 0; i < a.size(); ++i) table[a[i]] |= std::uint64_t{1} << i;
        const std::uint64_t high = std::uint64_t{1} << (a.size() - 1);
        std::uint64_t pv = ~std::uint64_t{0}, mv = 0;
        long long score = static_cast<long long>(a.size());
        for (const char32_t c : b) score += advance_block(pv, mv, c < 128 ? table[c] : 0, 1, high);
        for (const char32_t c : a) table[c] = 0;
        return static_cast<std::size_t>(score);
    }
    const PeqTable peq(a);
    std::size_t result = 0;
    ColumnRunner(peq, a.size()).run(b, true, [&](std::size_t, std::size_t d) {
        result = d;
        return true;
    });
    return result;
}

double levenshtein_similarity(std::u32string_view a, std::u32string_view b) {
    const std::size_t total = a.size() + b.size();
    if (total == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(total);
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    return levenshtein_similarity(unicode::decode_lossy(a), unicode::decode_lossy(b));
}

WindowBand substring_window_band(std::size_t candidate_len, std::size_t original_len) {
    // Integer arithmetic so that 0.98 * m never lands a hair below an integer.
    const std::size_t lo = (98 * candidate_len) / 100;
    const std::size_t hi = (102 * candidate_len + 99) / 100;
    if (lo > original_len) return {original_len, original_len};
    return {lo, std::min(hi, original_len)};
}

std::size_t semiglobal_distance(std::u32string_view candidate, std::u32string_view original) {
    const std::size_t m = candidate.size();
    if (m == 0) return 0;
    const PeqTable peq(candidate);
    std::size_t best = m;
    ColumnRunner(peq, m).run(original, false, [&](std::size_t, std::size_t d) {
        best = std::min(best, d);
        return best > 0;
    });
    return best;
}

double max_substring_similarity(std::u32string_view candidate, std::u32string_view original) {
    const std::size_t m = candidate.size();
    const std::size_t n = original.size();
    const WindowBand band = substring_window_band(m, n);
    if (m == 0) return 1.0;
    if (original.find(candidate) != std::u32string_view::npos) return 1.0;

    auto similarity = [m](std::size_t dist, std::size_t len) {
        return 1.0 - static_cast<double>(dist) / static_cast<double>(m + len);
    };

    double best = band.lo == 0 ? similarity(m, 0) : 0.0;
    const PeqTable peq(candidate);
    ColumnRunner runner(peq, m);
    for (std::size_t start = 0; start + band.lo <= n; ++start) {
        const std::size_t max_len = std::min(band.hi, n - start);
        runner.run(original.substr(start, max_len), true, [&](std::size_t len, std::size_t d) {
            if (len >= band.lo) best = std::max(best, similarity(d, len));
            return true;
        });
    }
    return best;
}

double max_substring_similarity(std::string_view candidate, std::string_view original) {
    return max_substring_similarity(unicode::decode_lossy(candidate), unicode::decode_lossy(original));
}

bool substring_similarity_exceeds(std::u32string_view candidate, std::u32string_view original,
                                  double threshold) {
    const std::size_t m = candidate.size();
    if (m == 0 || original.find(candidate) != std::u32string_view::npos) return 1.0 > threshold;

    // Any window in the band is at least as far as the best unconstrained
    // substring and no longer than band.hi, which bounds its similarity.
    const WindowBand band = substring_window_band(m, original.size());
    const std::size_t dmin = semiglobal_distance(candidate, original);
    const double bound = 1.0 - static_cast<double>(dmin) / static_cast<double>(m + band.hi);
    if (bound <= threshold) return false;
    return max_substring_similarity(candidate, original) > threshold;
}

double compression_ratio(const PairRecord& pair) {
    if (pair.complex.char_len == 0 || pair.candidate.char_len == 0)
        throw UndefinedInput("compression_ratio: empty sentence");
    return static_cast<double>(pair.candidate.char_len) / static_cast<double>(pair.complex.char_len);
}

}  // namespace silver
