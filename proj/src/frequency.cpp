#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "silver/errors.hpp"
#include "silver/metrics.hpp"
#include "silver/unicode.hpp"

namespace silver {

FrequencyTable::FrequencyTable(std::unordered_map<std::string, std::uint64_t> ranks) {
    for (auto& [word, rank] : ranks) {
        auto key = to_lower(word);
        auto [it, inserted] = ranks_.emplace(std::move(key), rank);
        if (!inserted) it->second = std::min(it->second, rank);
    }
    std::uint64_t max_rank = 0;
    for (const auto& [_, rank] : ranks_) max_rank = std::max(max_rank, rank);
    default_rank_ = max_rank + 1;
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open frequency table " + path.string());
    return parse(in, path.string());
}

FrequencyTable FrequencyTable::parse(std::istream& in, const std::string& source_name) {
    std::unordered_map<std::string, std::uint64_t> ranks;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!unicode::is_valid(line)) throw DataError(source_name, lineno, "invalid UTF-8");

        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw DataError(source_name, lineno, "expected word<TAB>rank");
        const std::string_view rank_text = std::string_view(line).substr(tab + 1);
        std::uint64_t rank = 0;
        auto [ptr, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
        if (ec != std::errc{} || ptr != rank_text.data() + rank_text.size() || rank == 0)
            throw DataError(source_name, lineno, "rank must be a positive integer");

        auto word = line.substr(0, tab);
        auto [it, inserted] = ranks.emplace(std::move(word), rank);
        if (!inserted) it->second = std::min(it->second, rank);
    }
    if (in.bad()) throw DataError("read error on " + source_name);
    return FrequencyTable(std::move(ranks));
}

std::uint64_t FrequencyTable::rank(std::string_view word) const {
    auto it = ranks_.find(to_lower(word));
    return it == ranks_.end() ? default_rank_ : it->second;
}

}  // namespace silver
