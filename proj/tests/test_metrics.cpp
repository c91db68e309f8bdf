#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "hand_counts.hpp"
#include "oracles.hpp"
#include "silver/errors.hpp"
#include "silver/metrics.hpp"
#include "silver/unicode.hpp"

using namespace silver;
using doctest::Approx;
using TL = std::vector<std::string>;

namespace {

std::u32string u32(std::string_view s) { return unicode::decode_lossy(s); }

std::u32string random_string(std::mt19937& rng, std::u32string_view alphabet, std::size_t max_len) {
    std::u32string s;
    const auto len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    return s;
}

TL random_tokens(std::mt19937& rng, const TL& vocab, std::size_t min_len, std::size_t max_len) {
    TL t;
    const auto len = min_len + rng() % (max_len - min_len + 1);
    for (std::size_t i = 0; i < len; ++i) t.push_back(vocab[rng() % vocab.size()]);
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Readability

TEST_CASE("FRE and FKGL against hand counts") {
    for (const auto& h : kHandCounts) {
        CAPTURE(h.text);
        const auto s = SentenceRecord::from_text(h.text);
        REQUIRE(s.word_count == h.words);
        REQUIRE(s.syllable_count == h.syllables);
        const double w = static_cast<double>(h.words);
        const double spw = static_cast<double>(h.syllables) / w;
        CHECK(std::abs(flesch_reading_ease(s) - (206.835 - 1.015 * w - 84.6 * spw)) < 1e-6);
        CHECK(std::abs(fkgl(s) - (0.39 * w + 11.8 * spw - 15.59)) < 1e-6);
    }
}

TEST_CASE("FRE and FKGL: five one-syllable words") {
    const auto s = SentenceRecord::from_text("cats dogs rats bats hats");
    CHECK(std::abs(flesch_reading_ease(s) - 117.16) < 1e-9);
    CHECK(std::abs(fkgl(s) - (-1.84)) < 1e-9);
    CHECK(flesch_reading_ease(s) == flesch_reading_ease(SentenceRecord::from_text("cats dogs rats bats hats")));
}

TEST_CASE("FRE and FKGL: no word tokens is undefined") {
    CHECK_THROWS_AS(flesch_reading_ease(SentenceRecord::from_text("27 %.")), UndefinedInput);
    CHECK_THROWS_AS(fkgl(SentenceRecord::from_text("")), UndefinedInput);
}

TEST_CASE("FRE falls and FKGL rises when a one-syllable word becomes three syllables") {
    std::mt19937 rng(21);
    const TL short_words{"cat", "dog", "run", "sat", "mat", "pump", "valve", "tube"};
    const TL long_words{"invention", "computer", "several", "animal"};
    for (int trial = 0; trial < 500; ++trial) {
        TL t = random_tokens(rng, short_words, 1, 12);
        const auto before = SentenceRecord::from_text(join_tokens(t));
        t[rng() % t.size()] = long_words[rng() % long_words.size()];
        const auto after = SentenceRecord::from_text(join_tokens(t));
        REQUIRE(after.syllable_count == before.syllable_count + 2);
        CHECK(flesch_reading_ease(after) < flesch_reading_ease(before));
        CHECK(fkgl(after) > fkgl(before));
    }
}

// ---------------------------------------------------------------------------
// WordRank

TEST_CASE("quantile_linear") {
    CHECK(quantile_linear({1, 2, 3, 4}, 0.75) == Approx(3.25));
    CHECK(quantile_linear({4, 1, 3, 2}, 0.75) == Approx(3.25));
    CHECK(quantile_linear({7}, 0.75) == 7.0);
    CHECK(quantile_linear({1, 2}, 0.5) == Approx(1.5));
    CHECK_THROWS_AS(quantile_linear({}, 0.75), UndefinedInput);
}

TEST_CASE("wordrank") {
    FrequencyTable freq({{"the", 1}, {"valve", 10}, {"is", 100}, {"open", 1000}, {"a", 7}});
    CHECK(freq.default_rank() == 1001);

    SUBCASE("shared rank gives its log") {
        FrequencyTable same({{"a", 7}, {"b", 7}, {"c", 7}});
        CHECK(wordrank(SentenceRecord::from_text("a b c b ."), same) == Approx(std::log(7.0)));
    }
    SUBCASE("Q3 of ln ranks 1, 10, 100, 1000") {
        CHECK(wordrank(SentenceRecord::from_text("The valve is open."), freq) == Approx(2.25 * std::log(10.0)));
    }
    SUBCASE("case-insensitive lookup and out-of-vocabulary default") {
        CHECK(wordrank(SentenceRecord::from_text("THE THE"), freq) == Approx(0.0));
        CHECK(wordrank(SentenceRecord::from_text("zebra"), freq) == Approx(std::log(1001.0)));
    }
    SUBCASE("undefined without words") {
        CHECK_THROWS_AS(wordrank(SentenceRecord::from_text("12 ."), freq), UndefinedInput);
    }
}

TEST_CASE("wordrank: oracle, permutation invariance and rank scaling") {
    std::mt19937 rng(8);
    const TL vocab{"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta", "iota", "kappa"};
    std::unordered_map<std::string, std::uint64_t> ranks, scaled;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        ranks[vocab[i]] = 1 + rng() % 5000;
        scaled[vocab[i]] = ranks[vocab[i]] * 13;
    }
    const FrequencyTable f(ranks), g(scaled);
    for (int trial = 0; trial < 300; ++trial) {
        TL t = random_tokens(rng, vocab, 1, 15);
        std::vector<double> logs;
        for (const auto& w : t) logs.push_back(std::log(static_cast<double>(ranks[w])));
        const double wr = wordrank(SentenceRecord::from_text(join_tokens(t)), f);
        CHECK(wr == Approx(oracle::q3(logs)));
        CHECK(wordrank(SentenceRecord::from_text(join_tokens(t)), g) == Approx(wr + std::log(13.0)));
        std::shuffle(t.begin(), t.end(), rng);
        CHECK(wordrank(SentenceRecord::from_text(join_tokens(t)), f) == Approx(wr));
    }
}

TEST_CASE("FrequencyTable parsing") {
    std::istringstream ok("# comment\nthe\t1\n\nValve\t12\nvalve\t9\nof\t2\n");
    const auto f = FrequencyTable::parse(ok, "ok.tsv");
    CHECK(f.size() == 3);
    CHECK(f.rank("VALVE") == 9);
    CHECK(f.rank("of") == 2);
    CHECK(f.default_rank() == 10);

    std::istringstream zero("a\t0\n");
    CHECK_THROWS_AS(FrequencyTable::parse(zero, "z"), DataError);
    std::istringstream bad("a\t1\nb\tx\n");
    try {
        FrequencyTable::parse(bad, "bad.tsv");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream cols("a 1\n");
    CHECK_THROWS_AS(FrequencyTable::parse(cols, "c"), DataError);
}

// ---------------------------------------------------------------------------
// Levenshtein

TEST_CASE("levenshtein: examples") {
    CHECK(levenshtein_similarity("abc", "abc") == 1.0);
    CHECK(levenshtein_similarity("abc", "abd") == Approx(1.0 - 1.0 / 6.0));
    CHECK(levenshtein_similarity("", "") == 1.0);
    CHECK(levenshtein_similarity("", "abc") == 0.0);
    CHECK(levenshtein_distance(u32("kitten"), u32("sitting")) == 3);
    CHECK(levenshtein_distance(u32("\xCE\xBCm"), u32("um")) == 1);
}

TEST_CASE("levenshtein: DP equals plain recursion on short strings") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto a = random_string(rng, U"abc", 6);
        const auto b = random_string(rng, U"abc", 6);
        CHECK(levenshtein_distance(a, b) == static_cast<std::size_t>(oracle::edit_distance_rec(a, b)));
    }
}

TEST_CASE("levenshtein: DP equals full matrix on longer strings") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_string(rng, U"abcdé μ", 60);
        auto b = a;
        for (int k = static_cast<int>(rng() % 6); k > 0 && !b.empty(); --k) b[rng() % b.size()] = U"xyzé"[rng() % 4];
        if (rng() % 2) b = random_string(rng, U"abcdé μ", 60);
        CHECK(levenshtein_distance(a, b) == static_cast<std::size_t>(oracle::edit_distance_matrix(a, b)));
    }
}

TEST_CASE("levenshtein: full matrix across word boundaries of the bit-parallel form") {
    std::mt19937 rng(3);
    for (const std::size_t len : {63, 64, 65, 127, 128, 129, 200}) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::u32string_view alphabet = trial % 3 == 0 ? std::u32string_view(U"ab\u00e9") : U"abcd ";
            std::u32string a;
            for (std::size_t i = 0; i < len; ++i) a += alphabet[rng() % alphabet.size()];
            const auto b = random_string(rng, alphabet, len + 20);
            CHECK(levenshtein_distance(a, b) == static_cast<std::size_t>(oracle::edit_distance_matrix(a, b)));
            CHECK(levenshtein_distance(b, a) == static_cast<std::size_t>(oracle::edit_distance_matrix(b, a)));
        }
    }
}

TEST_CASE("levenshtein: symmetry, identity and the max-length bound") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto a = random_string(rng, U"abcd", 10);
        const auto b = random_string(rng, U"abcd", 10);
        const double s = levenshtein_similarity(a, b);
        CHECK(s == levenshtein_similarity(b, a));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        if (!a.empty() || !b.empty()) {
            CHECK((s == 1.0) == (a == b));
            const double bound = 1.0 - static_cast<double>(std::max(a.size(), b.size())) /
                                           static_cast<double>(a.size() + b.size());
            CHECK(s >= bound - 1e-12);
        }
    }
}

// ---------------------------------------------------------------------------
// Substring similarity

TEST_CASE("substring window band") {
    auto b = substring_window_band(100, 500);
    CHECK(b.lo == 98);
    CHECK(b.hi == 102);
    b = substring_window_band(49, 500);  // 48.02 .. 49.98
    CHECK(b.lo == 48);
    CHECK(b.hi == 50);
    b = substring_window_band(50, 500);  // exact at both ends
    CHECK(b.lo == 49);
    CHECK(b.hi == 51);
    b = substring_window_band(100, 100);
    CHECK(b.hi == 100);
}

TEST_CASE("max_substring_similarity: examples") {
    CHECK(max_substring_similarity("compound", "the active compound here") == 1.0);
    CHECK(max_substring_similarity("xyz", "abcdefgh") < 0.99);
    CHECK(max_substring_similarity("xyz", "abcdefgh") <= 0.5);
    const std::string complex =
        "In the treatment of parts of plants, the active compound concentrations in the use forms can be varied "
        "within a substantial range.";
    const std::string simple =
        "The active compound concentrations in the use forms can be varied within a substantial range.";
    CHECK(max_substring_similarity(simple, complex) >= 0.99);
    CHECK(substring_similarity_exceeds(u32(simple), u32(complex), 0.99));
}

TEST_CASE("max_substring_similarity: brute-force window oracle") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 400; ++trial) {
        const auto orig = random_string(rng, U"abcd ", 70);
        std::u32string cand;
        if (orig.size() > 4 && rng() % 2) {
            const auto start = rng() % (orig.size() - 2);
            const auto len = 1 + rng() % (orig.size() - start - 1);
            cand = orig.substr(start, len);
            if (!cand.empty() && rng() % 2) cand[rng() % cand.size()] = U'z';
        } else {
            cand = random_string(rng, U"abcd ", 70);
        }
        const double expect = oracle::substring_similarity(cand, orig);
        CHECK(max_substring_similarity(cand, orig) == Approx(expect).epsilon(1e-12));
        for (double t : {0.5, 0.8, 0.9, 0.95, 0.99}) CHECK(substring_similarity_exceeds(cand, orig, t) == (expect > t));
    }
}

TEST_CASE("substring_similarity_exceeds: threshold 0.99 near long substrings") {
    std::mt19937 rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const auto orig = random_string(rng, U"abcdefgh ", 240);
        if (orig.size() < 120) continue;
        const auto start = rng() % 40;
        auto cand = orig.substr(start, 100 + rng() % 20);
        for (int k = static_cast<int>(rng() % 4); k > 0; --k) cand[rng() % cand.size()] = U'z';
        CHECK(substring_similarity_exceeds(cand, orig, 0.99) == (oracle::substring_similarity(cand, orig) > 0.99));
    }
}

TEST_CASE("semiglobal_distance lower-bounds every window distance") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const auto orig = random_string(rng, U"abc", 30);
        const auto cand = random_string(rng, U"abc", 12);
        std::size_t best = cand.size();
        for (std::size_t i = 0; i <= orig.size(); ++i)
            for (std::size_t j = i; j <= orig.size(); ++j)
                best = std::min(best, static_cast<std::size_t>(oracle::edit_distance_matrix(cand, orig.substr(i, j - i))));
        CHECK(semiglobal_distance(cand, orig) == best);
    }
}

// ---------------------------------------------------------------------------
// Compression

TEST_CASE("compression_ratio") {
    CHECK(compression_ratio(PairRecord::from_texts("same text", "same text")) == 1.0);
    CHECK(compression_ratio(PairRecord::from_texts(std::string(160, 'a'), std::string(80, 'b'))) == 0.5);
    CHECK_THROWS_AS(compression_ratio(PairRecord::from_texts("", "x")), UndefinedInput);
    CHECK_THROWS_AS(compression_ratio(PairRecord::from_texts("x", "")), UndefinedInput);
}

// ---------------------------------------------------------------------------
// BLEU

TEST_CASE("bleu: identity is 100") {
    std::mt19937 rng(13);
    const TL vocab{"the", "valve", "is", "open", ".", "a", "b"};
    for (int trial = 0; trial < 300; ++trial) {
        const TL c = random_tokens(rng, vocab, 1, 20);
        const TL refs[] = {c};
        CHECK(bleu(c, refs) == 100.0);
    }
}

TEST_CASE("bleu: zero unigram overlap") {
    const TL ref{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    const TL cand{"k", "l", "m", "n", "o", "p", "q", "r", "s", "t"};
    const TL refs[] = {ref};
    CHECK(bleu(cand, refs) == 0.0);
    CHECK(bleu(cand, refs) < 5.0);
}

TEST_CASE("bleu: hand example") {
    // p1 = 3/4, p2 = (1+1)/(3+1), p3 = (0+1)/(2+1), p4 = (0+1)/(1+1); c = 4 < r = 5.
    const TL cand{"the", "valve", "closes", "now"};
    const TL ref{"the", "valve", "is", "now", "open"};
    const TL refs[] = {ref};
    const double expect =
        100.0 * std::exp(1.0 - 5.0 / 4.0) * std::pow(0.75 * 0.5 * (1.0 / 3.0) * 0.5, 0.25);
    CHECK(bleu(cand, refs) == Approx(expect).epsilon(1e-12));
}

TEST_CASE("bleu: oracle agreement and relabeling invariance") {
    std::mt19937 rng(14);
    const TL vocab{"a", "b", "c", "d", "e"};
    std::map<std::string, std::string> relabel{{"a", "q"}, {"b", "a"}, {"c", "zz"}, {"d", "b"}, {"e", "."}};
    for (int trial = 0; trial < 500; ++trial) {
        const TL c = random_tokens(rng, vocab, 1, 12);
        std::vector<TL> refs;
        for (auto k = 1 + rng() % 3; k > 0; --k) refs.push_back(random_tokens(rng, vocab, 1, 12));
        const double b = bleu(c, refs);
        CHECK(b == Approx(oracle::bleu(c, refs)).epsilon(1e-12));
        CHECK(b >= 0.0);
        CHECK(b <= 100.0);

        auto map = [&](TL t) {
            for (auto& w : t) w = relabel[w];
            return t;
        };
        std::vector<TL> mapped_refs;
        for (const auto& r : refs) mapped_refs.push_back(map(r));
        CHECK(bleu(map(c), mapped_refs) == Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("bleu: corpus statistics add up") {
    const TL c1{"a", "b", "c"}, r1{"a", "b", "d"}, c2{"x", "y"}, r2{"x", "y", "z"};
    const TL refs1[] = {r1};
    const TL refs2[] = {r2};
    BleuStats s = bleu_stats(c1, refs1);
    s += bleu_stats(c2, refs2);
    CHECK(s.matches[0] == 4);
    CHECK(s.totals[0] == 5);
    CHECK(s.candidate_len == 5);
    CHECK(s.reference_len == 6);
}

TEST_CASE("bleu: errors") {
    const TL refs[] = {TL{"a"}};
    CHECK_THROWS_AS(bleu(TL{}, refs), UndefinedInput);
}

// ---------------------------------------------------------------------------
// SARI

TEST_CASE("sari: pinned golden values") {
    // Cross-checked against a separate dictionary-based implementation.
    const TL s1{"a", "b", "c"}, c1{"a", "b"};
    const TL r1[] = {TL{"a", "b"}};
    CHECK(std::abs(sari(s1, c1, r1) - 100.0) < 1e-6);
    CHECK(std::abs(oracle::sari(s1, c1, {r1[0]}) - 100.0) < 1e-6);

    const TL s2 = tokenize("the cat sat on the mat");
    const TL c2 = tokenize("the cat is on a mat");
    const std::vector<TL> r2{tokenize("the cat sat on a mat"), tokenize("a cat is on the mat")};
    CHECK(std::abs(sari(s2, c2, r2) - 47.6355820106) < 1e-6);

    const TL s3 = tokenize("about 95 you now get in .");
    const TL c3 = tokenize("about 95 you now get .");
    const std::vector<TL> r3{tokenize("about 95 species are currently known ."),
                             tokenize("about 95 species are now accepted ."),
                             tokenize("95 species are now accepted .")};
    CHECK(std::abs(sari(s3, c3, r3) - 41.6666666667) < 1e-6);
}

TEST_CASE("sari: breakdown of the toy example") {
    const TL s{"a", "b", "c"}, c{"a", "b"};
    const TL r[] = {TL{"a", "b"}};
    const auto b = sari_breakdown(s, c, r);
    for (int n = 0; n < kMaxNgram; ++n) {
        CHECK(b.keep_f1[n] == 1.0);
        CHECK(b.delete_precision[n] == 1.0);
        CHECK(b.add_f1[n] == 1.0);
    }
}

TEST_CASE("sari: nothing to change scores 100") {
    const TL s = tokenize("The valve is moved against the spring .");
    const TL r[] = {s};
    CHECK(sari(s, s, r) == Approx(100.0));
}

TEST_CASE("sari: oracle agreement and reference-order invariance") {
    std::mt19937 rng(15);
    const TL vocab{"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 400; ++trial) {
        const TL s = random_tokens(rng, vocab, 1, 10);
        const TL c = random_tokens(rng, vocab, 1, 10);
        std::vector<TL> refs;
        for (auto k = 1 + rng() % 4; k > 0; --k) refs.push_back(random_tokens(rng, vocab, 1, 10));
        const double v = sari(s, c, refs);
        CHECK(v == Approx(oracle::sari(s, c, refs)).epsilon(1e-12));
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
        std::shuffle(refs.begin(), refs.end(), rng);
        CHECK(sari(s, c, refs) == Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("sari: errors") {
    const TL s{"a"};
    const TL r[] = {TL{"a"}};
    CHECK_THROWS_AS(sari(s, TL{}, r), UndefinedInput);
    CHECK_THROWS_AS(sari(s, s, std::span<const TL>{}), UndefinedInput);
    const TL empty_ref[] = {TL{}};
    CHECK_THROWS_AS(sari(s, s, empty_ref), UndefinedInput);
}

// ---------------------------------------------------------------------------
// Dependency depth

TEST_CASE("dependency_depth: examples and errors") {
    CHECK(dependency_depth({{0}}) == 0);
    CHECK(dependency_depth({{0, 1, 2, 3}}) == 3);
    CHECK(dependency_depth({{2, 0, 2, 3}}) == 2);
    CHECK_THROWS_AS(dependency_depth({{}}), MalformedParse);
    CHECK_THROWS_AS(dependency_depth({{0, 0}}), MalformedParse);       // two roots
    CHECK_THROWS_AS(dependency_depth({{2, 1}}), MalformedParse);       // no root, cycle
    CHECK_THROWS_AS(dependency_depth({{0, 3, 2}}), MalformedParse);    // cycle beside the root
    CHECK_THROWS_AS(dependency_depth({{0, 5}}), MalformedParse);       // out of range
    CHECK_THROWS_AS(dependency_depth({{0, 2}}), MalformedParse);       // self head
    CHECK_THROWS_AS(dependency_depth({{0, -1}}), MalformedParse);
}

TEST_CASE("dependency_depth: random trees against breadth-first search") {
    std::mt19937 rng(16);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        // Random labelled tree: attach node order[k] to an earlier node.
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i + 1;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> heads(n);
        heads[order[0] - 1] = 0;
        for (int k = 1; k < n; ++k) heads[order[k] - 1] = order[rng() % k];
        const auto expect = oracle::tree_height_bfs(heads);
        REQUIRE(expect.has_value());
        CHECK(dependency_depth({heads}) == *expect);
    }
}

TEST_CASE("dependency_depth: random head vectors agree with the oracle on validity") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<int> heads(n);
        for (auto& h : heads) h = static_cast<int>(rng() % (n + 2)) - (rng() % 10 == 0 ? 1 : 0);
        const auto expect = oracle::tree_height_bfs(heads);
        if (expect) {
            CHECK(dependency_depth({heads}) == *expect);
        } else {
            CHECK_THROWS_AS(dependency_depth({heads}), MalformedParse);
        }
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("compute_pair_metrics") {
    auto p = PairRecord::from_texts("The line includes an outer conductor tube which is equipped on both ends.",
                                    "The line has an outer conductor tube on both ends.");
    p.depth_complex = 5;
    p.depth_simple = 3;
    const FrequencyTable freq({{"the", 1}, {"line", 50}, {"tube", 900}});
    const auto m = compute_pair_metrics(p, freq);
    CHECK(m.fre_complex == flesch_reading_ease(p.complex));
    CHECK(m.fre_simple == flesch_reading_ease(p.candidate));
    CHECK(m.wordrank_simple == wordrank(p.candidate, freq));
    CHECK(m.depth_complex == 5);
    CHECK(m.depth_simple == 3);
    CHECK(m.lev_similarity == levenshtein_similarity(p.candidate.chars, p.complex.chars));
    CHECK(m.compression_ratio == Approx(50.0 / 73.0));
    const TL refs[] = {p.complex.tokens};
    CHECK(m.bleu == bleu(p.candidate.tokens, refs));

    const auto q = compute_pair_metrics(PairRecord::from_texts("a b c d e", "a b c d e"), freq);
    CHECK_FALSE(q.depth_complex.has_value());
}
