#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "silver/kernels.hpp"

using namespace silver;

namespace {

const char* kWords[] = {"the",   "valve", "spring", "member", "is",       "moved",   "against", "body",
                        "pump",  "held",  "top",    "wall",   "arrangement", "circumferentially", "of", "by",
                        "layer", "film",  "holes",  "blend",  "material", "moisture", "could",  "be"};

std::string sentence(std::mt19937_64& rng, int words) {
    std::string s;
    for (int i = 0; i < words; ++i) {
        if (i) s += ' ';
        s += kWords[rng() % std::size(kWords)];
    }
    return s + ".";
}

std::vector<PairRecord> make_pairs(std::size_t n) {
    std::mt19937_64 rng(1);
    std::vector<PairRecord> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int len = 8 + static_cast<int>(rng() % 30);
        pairs.push_back(PairRecord::from_texts(sentence(rng, len), sentence(rng, len * 3 / 4)));
    }
    return pairs;
}

const FrequencyTable& freq() {
    static const FrequencyTable table = [] {
        std::unordered_map<std::string, std::uint64_t> m;
        std::uint64_t r = 1;
        for (const char* w : kWords) m[w] = r++ * 37;
        return FrequencyTable(m);
    }();
    return table;
}

void BM_Serial(benchmark::State& state) {
    const auto pairs = make_pairs(static_cast<std::size_t>(state.range(0)));
    std::vector<PairOutcome> out(pairs.size());
    const FilterConfig cfg;
    for (auto _ : state) {
        evaluate_pairs_serial(pairs, cfg, freq(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
    const auto pairs = make_pairs(static_cast<std::size_t>(state.range(0)));
    std::vector<PairOutcome> out(pairs.size());
    const FilterConfig cfg;
    for (auto _ : state) {
        evaluate_pairs_parallel(pairs, cfg, freq(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Parallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
