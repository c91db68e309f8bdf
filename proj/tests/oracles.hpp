#pragma once

// Slow, obviously-correct reference implementations used only by the tests.
// None of these share code with the library beyond tokenization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Plain recursion over prefixes, no memo. Exponential; keep inputs short.
inline int edit_distance_rec(const std::u32string& a, std::size_t i, const std::u32string& b, std::size_t j) {
    if (i == 0) return static_cast<int>(j);
    if (j == 0) return static_cast<int>(i);
    const int sub = edit_distance_rec(a, i - 1, b, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
    if (sub == 0) return 0;
    const int del = edit_distance_rec(a, i - 1, b, j) + 1;
    const int ins = edit_distance_rec(a, i, b, j - 1) + 1;
    return std::min({sub, del, ins});
}

inline int edit_distance_rec(const std::u32string& a, const std::u32string& b) {
    return edit_distance_rec(a, a.size(), b, b.size());
}

// Full-matrix Wagner-Fischer, for strings too long for the recursion.
inline int edit_distance_matrix(const std::u32string& a, const std::u32string& b) {
    std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    return d[a.size()][b.size()];
}

inline double similarity(const std::u32string& a, const std::u32string& b) {
    if (a.empty() && b.empty()) return 1.0;
    return 1.0 - static_cast<double>(edit_distance_matrix(a, b)) / static_cast<double>(a.size() + b.size());
}

// Every window of the original whose length lies in [floor(.98m), ceil(1.02m)].
inline double substring_similarity(const std::u32string& cand, const std::u32string& orig) {
    const std::size_t m = cand.size();
    const std::size_t n = orig.size();
    if (orig.find(cand) != std::u32string::npos) return 1.0;
    const auto lo = static_cast<std::size_t>(std::floor(0.98 * static_cast<double>(m) + 1e-9));
    auto hi = static_cast<std::size_t>(std::ceil(1.02 * static_cast<double>(m) - 1e-9));
    if (lo > n) return similarity(cand, orig);
    hi = std::min(hi, n);
    double best = 0.0;
    for (std::size_t len = lo; len <= hi; ++len)
        for (std::size_t start = 0; start + len <= n; ++start)
            best = std::max(best, similarity(cand, orig.substr(start, len)));
    return best;
}

// Q3 by linear interpolation between order statistics.
inline double q3(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double h = 0.75 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Tree height by breadth-first search from the root over child lists.
inline std::optional<int> tree_height_bfs(const std::vector<int>& heads) {
    const int n = static_cast<int>(heads.size());
    if (n == 0) return std::nullopt;
    std::vector<std::vector<int>> children(n + 1);
    int roots = 0;
    for (int i = 1; i <= n; ++i) {
        const int h = heads[i - 1];
        if (h < 0 || h > n || h == i) return std::nullopt;
        if (h == 0) ++roots;
        children[h].push_back(i);
    }
    if (roots != 1) return std::nullopt;
    std::vector<int> level(n + 1, -1);
    std::queue<int> q;
    q.push(children[0][0]);
    level[children[0][0]] = 0;
    int seen = 0;
    int height = 0;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        ++seen;
        height = std::max(height, level[u]);
        for (int c : children[u]) {
            level[c] = level[u] + 1;
            q.push(c);
        }
    }
    if (seen != n) return std::nullopt;  // a cycle is unreachable from the root
    return height;
}

// --- n-gram metrics over plain vectors ------------------------------------

using Grams = std::vector<std::vector<std::string>>;

inline Grams ngrams(const std::vector<std::string>& t, std::size_t n) {
    Grams out;
    for (std::size_t i = 0; i + n <= t.size(); ++i) out.emplace_back(t.begin() + i, t.begin() + i + n);
    return out;
}

inline std::size_t count(const Grams& g, const std::vector<std::string>& x) {
    return static_cast<std::size_t>(std::count(g.begin(), g.end(), x));
}

inline std::set<std::vector<std::string>> distinct(const Grams& g) { return {g.begin(), g.end()}; }

// Sentence BLEU with the library's smoothing choice, written out longhand.
inline double bleu(const std::vector<std::string>& c, const std::vector<std::vector<std::string>>& refs) {
    double log_p = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const Grams cg = ngrams(c, n);
        double match = 0.0;
        for (const auto& g : distinct(cg)) {
            std::size_t best = 0;
            for (const auto& r : refs) best = std::max(best, count(ngrams(r, n), g));
            match += static_cast<double>(std::min(count(cg, g), best));
        }
        const double total = static_cast<double>(cg.size());
        if (n == 1) {
            if (match == 0.0) return 0.0;
            log_p += std::log(match / total);
        } else {
            log_p += std::log((match + 1.0) / (total + 1.0));
        }
    }
    std::size_t r = refs[0].size();
    for (const auto& ref : refs) {
        const auto d = [&](std::size_t x) { return x > c.size() ? x - c.size() : c.size() - x; };
        if (d(ref.size()) < d(r) || (d(ref.size()) == d(r) && ref.size() < r)) r = ref.size();
    }
    const double bp = c.size() < r ? std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c.size())) : 1.0;
    return 100.0 * bp * std::exp(log_p / 4.0);
}

// SARI with every multiset operation spelled out by counting occurrences.
inline double sari(const std::vector<std::string>& s, const std::vector<std::string>& c,
                   const std::vector<std::vector<std::string>>& refs) {
    const double R = static_cast<double>(refs.size());
    double total = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const Grams sg = ngrams(s, n), cg = ngrams(c, n);
        Grams rg;
        for (const auto& r : refs)
            for (auto& g : ngrams(r, n)) rg.push_back(g);
        std::set<std::vector<std::string>> universe;
        for (const Grams* gs : std::initializer_list<const Grams*>{&sg, &cg, &rg})
            for (const auto& g : *gs) universe.insert(g);

        double kp_sum = 0, kp_n = 0, kr_sum = 0, kr_n = 0, dp_sum = 0, dp_n = 0;
        for (const auto& g : universe) {
            const double sc = R * count(sg, g), cc = R * count(cg, g), rc = count(rg, g);
            const double keep = std::min(sc, cc), keep_good = std::min(keep, rc), keep_all = std::min(sc, rc);
            if (keep > 0) kp_sum += keep_good / keep, kp_n += 1;
            if (keep_all > 0) kr_sum += keep_good / keep_all, kr_n += 1;
            const double del = std::max(0.0, sc - cc), del_good = std::max(0.0, del - rc);
            if (del > 0) dp_sum += del_good / del, dp_n += 1;
        }
        const double kp = kp_n > 0 ? kp_sum / kp_n : 1.0, kr = kr_n > 0 ? kr_sum / kr_n : 1.0;
        const double keep_f1 = kp + kr > 0 ? 2 * kp * kr / (kp + kr) : 0.0;
        const double del_p = dp_n > 0 ? dp_sum / dp_n : 1.0;

        double added = 0, added_good = 0, demanded = 0;
        for (const auto& g : distinct(cg))
            if (count(sg, g) == 0) added += 1, added_good += count(rg, g) > 0;
        for (const auto& g : distinct(rg))
            if (count(sg, g) == 0) demanded += 1;
        const double ap = added > 0 ? added_good / added : 1.0, ar = demanded > 0 ? added_good / demanded : 1.0;
        const double add_f1 = ap + ar > 0 ? 2 * ap * ar / (ap + ar) : 0.0;
        total += keep_f1 + del_p + add_f1;
    }
    return 100.0 * total / 12.0;
}

}  // namespace oracle
