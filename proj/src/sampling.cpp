#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>

#include "silver/corpus.hpp"
#include "silver/errors.hpp"

namespace silver {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Reject the low sliver that would bias the modulo.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

std::vector<std::string> sample_lines(std::istream& in, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, std::string>> reservoir;
    reservoir.reserve(std::min<std::size_t>(n, 1 << 20));

    LineReader lines(in, "sample-input");
    std::string line;
    std::size_t lineno = 0;
    std::size_t seen = 0;
    while (lines.next(line, lineno)) {
        if (reservoir.size() < n) {
            reservoir.emplace_back(seen, line);
        } else if (n > 0) {
            const auto j = uniform_below(rng, seen + 1);
            if (j < n) reservoir[j] = {seen, line};
        }
        ++seen;
    }
    std::sort(reservoir.begin(), reservoir.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::string> out;
    out.reserve(reservoir.size());
    for (auto& [_, text] : reservoir) out.push_back(std::move(text));
    return out;
}

std::vector<SentenceRecord> sample_sentences(std::istream& in, std::size_t n, std::uint64_t seed) {
    std::vector<SentenceRecord> out;
    for (auto& line : sample_lines(in, n, seed)) out.push_back(SentenceRecord::from_text(std::move(line)));
    return out;
}

void SplitSpec::validate() const {
    if (train < 0.0 || valid < 0.0 || test < 0.0) throw ConfigError("split fractions must be non-negative");
    if (std::abs(train + valid + test - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");
}

SplitSpec SplitSpec::from_fractions(std::string_view text, std::uint64_t seed) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
            throw ConfigError("bad split fraction \"" + std::string(field) + "\"");
        parts.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) throw ConfigError("expected three comma-separated fractions");
    SplitSpec spec{parts[0], parts[1], parts[2], seed};
    spec.validate();
    return spec;
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    // The epsilon keeps n * 0.2 = 57593.000000000004 from rounding up to 57594.
    auto ceil_share = [n](double fraction) {
        const double x = static_cast<double>(n) * fraction;
        return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-6)));
    };
    SplitSizes s;
    s.test = std::min(ceil_share(spec.test), n);
    s.valid = std::min(ceil_share(spec.valid), n - s.test);
    s.train = n - s.test - s.valid;
    return s;
}

SplitAssignment split_corpus(std::size_t n, const SplitSpec& spec) {
    const SplitSizes sizes = split_sizes(n, spec);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(order[i - 1], order[j]);
    }

    SplitAssignment out;
    const auto train_end = order.begin() + static_cast<std::ptrdiff_t>(sizes.train);
    const auto valid_end = train_end + static_cast<std::ptrdiff_t>(sizes.valid);
    out.train.assign(order.begin(), train_end);
    out.valid.assign(train_end, valid_end);
    out.test.assign(valid_end, order.end());
    return out;
}

}  // namespace silver
