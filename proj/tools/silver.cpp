// silver: build, inspect and split a silver-standard simplification corpus.
//
//   silver preprocess --in bronze.txt --out clean.txt [--sample N --seed S]
//   silver filter --in pairs.jsonl --out silver.jsonl --freq ranks.tsv [--report r.json]
//   silver stats --in silver.jsonl --freq ranks.tsv --out report.json
//   silver split --in silver.jsonl --train a --valid b --test c --seed S
//   silver eval --source src.txt --candidate out.txt --refs ref1.txt ref2.txt
//
// Exit status: 0 ok, 1 usage or config error, 2 data error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "silver/corpus.hpp"
#include "silver/errors.hpp"
#include "silver/unicode.hpp"

using namespace silver;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path + " for writing");
    return out;
}

FrequencyTable load_freq(const std::string& path) {
    return path.empty() ? FrequencyTable{} : FrequencyTable::load(path);
}

void write_report(const CorpusReport& report, const std::string& path) {
    if (path.empty()) return;
    auto out = open_out(path);
    out << report.to_text();
    if (!out) throw DataError("write error on " + path);
}

std::vector<std::string> read_lines(const std::string& path, std::vector<std::size_t>* linenos = nullptr) {
    LineReader reader{std::filesystem::path(path)};
    std::vector<std::string> lines;
    std::string line;
    std::size_t lineno = 0;
    while (reader.next(line, lineno)) {
        lines.push_back(line);
        if (linenos) linenos->push_back(lineno);
    }
    return lines;
}

// --- preprocess -------------------------------------------------------------

struct PreprocessArgs {
    std::string in, out, report;
    std::size_t min_tokens = 5, max_tokens = 55;
    double min_alpha = 0.60;
    std::uint64_t seed = 0;
    std::optional<std::size_t> sample;
};

int run_preprocess(const PreprocessArgs& a) {
    FilterConfig cfg;
    cfg.min_tokens = a.min_tokens;
    cfg.max_tokens = a.max_tokens;
    cfg.min_alpha_ratio = a.min_alpha;
    cfg.validate();

    std::vector<std::string> lines;
    std::vector<std::size_t> linenos;
    if (a.sample) {
        std::ifstream in(a.in, std::ios::binary);
        if (!in) throw DataError("cannot open " + a.in);
        lines = sample_lines(in, *a.sample, a.seed);
    } else {
        lines = read_lines(a.in, &linenos);
    }

    CorpusReport report;
    report.command = "preprocess";
    report.filtering_applied = false;
    report.config = cfg;
    report.provenance.inputs = {a.in};
    if (a.sample) report.provenance.seed = a.seed;
    report.provenance.started_at = utc_timestamp();

    auto out = open_out(a.out);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!unicode::is_valid(lines[i])) {
            if (linenos.empty()) throw DataError(a.in + ": sampled line " + std::to_string(i + 1) + ": encoding error: invalid UTF-8");
            throw DataError(a.in, linenos[i], "encoding error: invalid UTF-8");
        }
        const auto rec = SentenceRecord::from_text(lines[i]);
        ++report.input_count;
        auto pre = preprocess_sentence(rec, cfg);
        if (!pre.kept()) {
            ++report.preprocess_dropped[static_cast<std::size_t>(*pre.dropped)];
            continue;
        }
        ++report.preprocessed_count;
        ++report.kept_count;
        out << pre.cleaned.raw_text << '\n';
    }
    if (!out) throw DataError("write error on " + a.out);
    report.provenance.finished_at = utc_timestamp();
    write_report(report, a.report);
    std::fprintf(stderr, "preprocess: %zu read, %zu kept, %zu dropped\n", report.input_count,
                 report.preprocessed_count, report.total_dropped());
    return 0;
}

// --- filter -----------------------------------------------------------------

struct FilterArgs {
    std::string in, out, config, audit, parses, freq, report, format = "auto";
    int threads = 0;
    bool serial = false;
    bool no_preprocess = false;
    std::map<std::string, std::string> overrides;
};

int run_filter(const FilterArgs& a) {
    FilterConfig cfg = a.config.empty() ? FilterConfig{} : FilterConfig::load(a.config);
    for (const auto& [name, value] : a.overrides) cfg.set_field(name, value);
    cfg.validate();
    const auto freq = load_freq(a.freq);

    PairReader reader(std::filesystem::path(a.in), parse_pair_format(a.format));
    auto silver = open_out(a.out);
    std::optional<std::ofstream> audit;
    std::optional<ParseReader> parses;
    BuildOptions opt;
    if (!a.audit.empty()) {
        audit.emplace(open_out(a.audit));
        opt.audit = &*audit;
    }
    if (!a.parses.empty()) {
        parses.emplace(std::filesystem::path(a.parses));
        opt.parses = &*parses;
    }
    opt.parallel = !a.serial;
    opt.threads = a.threads;
    opt.preprocess = !a.no_preprocess;

    CorpusReport report = build_silver(reader, silver, cfg, freq, opt);
    silver.flush();
    if (!silver) throw DataError("write error on " + a.out);
    write_report(report, a.report);

    std::fprintf(stderr, "filter: %zu read, %zu preprocessed, %zu kept\n", report.input_count,
                 report.preprocessed_count, report.kept_count);
    for (Stage s : kChainOrder)
        std::fprintf(stderr, "  %-20s %zu\n", std::string(stage_name(s)).c_str(),
                     report.stage_removals[static_cast<std::size_t>(s)]);
    return 0;
}

// --- stats ------------------------------------------------------------------

struct StatsArgs {
    std::string in, freq, parses, out, format = "auto";
};

int run_stats(const StatsArgs& a) {
    const auto freq = load_freq(a.freq);
    auto pairs = read_all_pairs(a.in, parse_pair_format(a.format));
    if (!a.parses.empty()) {
        ParseReader parses{std::filesystem::path(a.parses)};
        for (auto& p : pairs) {
            auto c = parses.next();
            auto s = parses.next();
            if (!c || !s) throw DataError(a.in, p.line, "parse file has no blocks for this record");
            try {
                p.depth_complex = dependency_depth(*c);
                p.depth_simple = dependency_depth(*s);
            } catch (const MalformedParse& e) {
                throw DataError(a.in, p.line, std::string("malformed parse: ") + e.what());
            }
        }
    }

    CorpusReport report;
    report.command = "stats";
    report.filtering_applied = false;
    report.frequency_table_size = freq.size();
    report.depth_provider = !a.parses.empty();
    report.provenance.inputs = {a.in};
    report.provenance.started_at = utc_timestamp();
    report.input_count = report.preprocessed_count = report.kept_count = pairs.size();
    report.statistics = compute_report_stats(pairs, freq);
    report.statistics.complex_preprocessed = report.statistics.silver_complex;
    report.provenance.finished_at = utc_timestamp();

    if (a.out.empty()) {
        std::cout << report.to_text();
    } else {
        write_report(report, a.out);
    }
    return 0;
}

// --- split ------------------------------------------------------------------

struct SplitArgs {
    std::string in, train, valid, test, fractions = "0.64,0.16,0.20", format = "auto";
    std::uint64_t seed = 0;
};

int run_split(const SplitArgs& a) {
    const SplitSpec spec = SplitSpec::from_fractions(a.fractions, a.seed);
    const auto format = parse_pair_format(a.format);

    LineReader reader{std::filesystem::path(a.in)};
    std::vector<std::string> lines;
    std::string line;
    std::size_t lineno = 0;
    while (reader.next(line, lineno)) {
        parse_pair_line(line, lineno, format, a.in);
        lines.push_back(line);
    }

    const SplitAssignment parts = split_corpus(lines.size(), spec);
    auto emit = [&](const std::string& path, const std::vector<std::size_t>& idx) {
        auto out = open_out(path);
        for (auto i : idx) out << lines[i] << '\n';
        if (!out) throw DataError("write error on " + path);
    };
    emit(a.train, parts.train);
    emit(a.valid, parts.valid);
    emit(a.test, parts.test);
    std::fprintf(stderr, "split: train %zu, valid %zu, test %zu\n", parts.train.size(), parts.valid.size(),
                 parts.test.size());
    return 0;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
    std::string source, candidate;
    std::vector<std::string> refs;
};

TokenList eval_tokens(const std::string& text) { return tokenize(to_lower(text)); }

int run_eval(const EvalArgs& a) {
    const auto src = read_lines(a.source);
    const auto cand = read_lines(a.candidate);
    std::vector<std::vector<std::string>> refs;
    for (const auto& r : a.refs) refs.push_back(read_lines(r));
    if (cand.size() != src.size()) throw DataError(a.candidate, 0, "line count differs from source");
    for (std::size_t k = 0; k < refs.size(); ++k)
        if (refs[k].size() != src.size()) throw DataError(a.refs[k], 0, "line count differs from source");
    if (src.empty()) throw DataError(a.source, 0, "no sentences to evaluate");

    double sari_sum = 0.0;
    BleuStats corpus;
    std::vector<TokenList> ref_tokens(refs.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t k = 0; k < refs.size(); ++k) ref_tokens[k] = eval_tokens(refs[k][i]);
        const TokenList s = eval_tokens(src[i]);
        const TokenList c = eval_tokens(cand[i]);
        sari_sum += sari(s, c, ref_tokens);
        corpus += bleu_stats(c, ref_tokens);
    }
    std::printf("SARI\t%.4f\n", sari_sum / static_cast<double>(src.size()));
    std::printf("BLEU\t%.4f\n", bleu_from_stats(corpus));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Silver-standard simplification corpus builder"};
    app.require_subcommand(1);

    PreprocessArgs pa;
    auto* pre = app.add_subcommand("preprocess", "Length/alpha gate and figure-reference stripping on raw sentences");
    pre->add_option("--in", pa.in, "One sentence per line")->required();
    pre->add_option("--out", pa.out)->required();
    pre->add_option("--min-tokens", pa.min_tokens);
    pre->add_option("--max-tokens", pa.max_tokens);
    pre->add_option("--min-alpha", pa.min_alpha);
    pre->add_option("--seed", pa.seed);
    pre->add_option("--sample", pa.sample, "Reservoir-sample this many lines first");
    pre->add_option("--report", pa.report);

    FilterArgs fa;
    auto* filt = app.add_subcommand("filter", "Run the filter chain over candidate pairs");
    filt->add_option("--in", fa.in)->required();
    filt->add_option("--out", fa.out)->required();
    filt->add_option("--config", fa.config);
    filt->add_option("--audit", fa.audit);
    filt->add_option("--parses", fa.parses, "Dependency parses, two blocks per pair");
    filt->add_option("--freq", fa.freq, "word<TAB>rank table");
    filt->add_option("--report", fa.report);
    filt->add_option("--format", fa.format, "auto, jsonl or tsv");
    filt->add_option("--threads", fa.threads);
    filt->add_flag("--serial", fa.serial, "Use the single-threaded kernel");
    filt->add_flag("--no-preprocess", fa.no_preprocess, "Input is already preprocessed");
    std::map<std::string, std::string> override_values;
    std::vector<std::pair<std::string, CLI::Option*>> override_opts;
    for (const auto& name : FilterConfig::field_names()) {
        std::string flag = name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        override_opts.emplace_back(name, filt->add_option("--" + flag, override_values[name]));
    }

    StatsArgs sa;
    auto* stats = app.add_subcommand("stats", "Corpus statistics without filtering");
    stats->add_option("--in", sa.in)->required();
    stats->add_option("--freq", sa.freq);
    stats->add_option("--parses", sa.parses);
    stats->add_option("--out", sa.out);
    stats->add_option("--format", sa.format);

    SplitArgs xa;
    auto* split = app.add_subcommand("split", "Seeded train/valid/test split");
    split->add_option("--in", xa.in)->required();
    split->add_option("--train", xa.train)->required();
    split->add_option("--valid", xa.valid)->required();
    split->add_option("--test", xa.test)->required();
    split->add_option("--fractions", xa.fractions);
    split->add_option("--seed", xa.seed);
    split->add_option("--format", xa.format);

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Corpus SARI and BLEU");
    eval->add_option("--source", ea.source)->required();
    eval->add_option("--candidate", ea.candidate)->required();
    eval->add_option("--refs", ea.refs)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*pre) return run_preprocess(pa);
        if (*filt) {
            for (const auto& [name, opt] : override_opts)
                if (opt->count() > 0) fa.overrides[name] = override_values[name];
            return run_filter(fa);
        }
        if (*stats) return run_stats(sa);
        if (*split) return run_split(xa);
        if (*eval) return run_eval(ea);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "silver: config error: %s\n", e.what());
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "silver: %s\n", e.what());
        return 2;
    } catch (const UndefinedInput& e) {
        std::fprintf(stderr, "silver: %s\n", e.what());
        return 2;
    }
    return 1;
}
