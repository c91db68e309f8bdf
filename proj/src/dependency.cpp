#include <string>
#include <vector>

#include "silver/errors.hpp"
#include "silver/metrics.hpp"

namespace silver {

int dependency_depth(const DependencyParse& parse) {
    const auto& heads = parse.heads;
    const std::size_t n = heads.size();
    if (n == 0) throw MalformedParse("empty parse");

    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int h = heads[i];
        if (h < 0 || static_cast<std::size_t>(h) > n)
            throw MalformedParse("token " + std::to_string(i + 1) + " has out-of-range head " +
                                 std::to_string(h));
        if (static_cast<std::size_t>(h) == i + 1)
            throw MalformedParse("token " + std::to_string(i + 1) + " heads itself");
        if (h == 0) ++roots;
    }
    if (roots != 1) throw MalformedParse("expected exactly one root, found " + std::to_string(roots));

    // depth[i] = edges from the root to token i+1; -1 unknown, -2 on the current path.
    std::vector<int> depth(n, -1);
    std::vector<std::size_t> path;
    int deepest = 0;
    for (std::size_t start = 0; start < n; ++start) {
        std::size_t cur = start;
        path.clear();
        while (depth[cur] == -1) {
            depth[cur] = -2;
            path.push_back(cur);
            const int h = heads[cur];
            if (h == 0) break;
            cur = static_cast<std::size_t>(h - 1);
        }
        if (depth[cur] == -2 && heads[cur] != 0) throw MalformedParse("cycle in dependency heads");

        // Unwind the path from its top end.
        int d = heads[cur] == 0 && depth[cur] == -2 ? -1 : depth[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            d += 1;
            depth[*it] = d;
            if (d > deepest) deepest = d;
        }
    }
    return deepest;
}

PairMetrics compute_pair_metrics(const PairRecord& pair, const FrequencyTable& freq) {
    PairMetrics m;
    m.fre_complex = flesch_reading_ease(pair.complex);
    m.fre_simple = flesch_reading_ease(pair.candidate);
    m.fkgl_complex = fkgl(pair.complex);
    m.fkgl_simple = fkgl(pair.candidate);
    m.wordrank_complex = wordrank(pair.complex, freq);
    m.wordrank_simple = wordrank(pair.candidate, freq);
    m.depth_complex = pair.depth_complex;
    m.depth_simple = pair.depth_simple;
    m.lev_similarity = levenshtein_similarity(pair.candidate.chars, pair.complex.chars);
    m.compression_ratio = compression_ratio(pair);
    const TokenList refs[] = {pair.complex.tokens};
    m.bleu = bleu(pair.candidate.tokens, refs);
    return m;
}

}  // namespace silver
