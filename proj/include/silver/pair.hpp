#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "silver/textcore.hpp"

namespace silver {

/// A (complex, candidate) sentence pair as read from a corpus file.
struct PairRecord {
    std::optional<std::string> id;
    /// 1-based line in the source file; 0 for pairs built in memory.
    std::size_t line = 0;
    SentenceRecord complex;
    SentenceRecord candidate;
    /// Set by the candidate generator when paraphrasing failed.
    bool failed = false;
    /// Dependency-tree heights supplied by a parse provider.
    std::optional<int> depth_complex;
    std::optional<int> depth_simple;

    static PairRecord from_texts(std::string complex, std::string candidate);

    bool operator==(const PairRecord& other) const {
        return id == other.id && complex == other.complex && candidate == other.candidate &&
               failed == other.failed;
    }
};

inline PairRecord PairRecord::from_texts(std::string complex, std::string candidate) {
    PairRecord p;
    p.complex = SentenceRecord::from_text(std::move(complex));
    p.candidate = SentenceRecord::from_text(std::move(candidate));
    return p;
}

}  // namespace silver
