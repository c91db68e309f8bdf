#include <exception>
#include <functional>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "silver/corpus.hpp"
#include "silver/errors.hpp"

namespace silver {

namespace {

// Runs fn(i) for i in [0, n), rethrowing the exception of the lowest index.
void for_each_index(std::size_t n, bool parallel, int threads, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
#ifdef _OPENMP
    const int nthreads = parallel ? (threads > 0 ? threads : omp_get_max_threads()) : 1;
#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
#else
    (void)parallel;
    (void)threads;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
#endif
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Slot {
    std::string line;
    std::size_t lineno = 0;
    std::optional<DependencyParse> parse_complex;
    std::optional<DependencyParse> parse_candidate;
    PairRecord pair;
    std::optional<DropReason> dropped;
};

void write_audit(std::ostream& audit, const PairRecord& pair, const FilterDecision* decision,
                 std::optional<DropReason> dropped) {
    nlohmann::ordered_json j;
    j["line"] = pair.line;
    if (pair.id) j["id"] = *pair.id;
    if (dropped) {
        j["verdict"] = "dropped";
        j["reason"] = std::string(drop_reason_name(*dropped));
    } else {
        j["verdict"] = "removed";
        j["stage"] = std::string(stage_name(*decision->stage));
        j["detail"] = decision->detail;
    }
    j["complex"] = pair.complex.raw_text;
    j["candidate"] = pair.candidate.raw_text;
    audit << j.dump() << '\n';
}

}  // namespace

CorpusReport build_silver(PairReader& in, std::ostream& silver, const FilterConfig& cfg,
                          const FrequencyTable& freq, const BuildOptions& options) {
    cfg.validate();
    if (options.batch_size == 0) throw std::invalid_argument("batch_size must be positive");

    CorpusReport report;
    report.config = cfg;
    report.frequency_table_size = freq.size();
    report.depth_provider = options.parses != nullptr;
    report.provenance.inputs.push_back(in.source_name());
    report.provenance.threads = options.parallel ? (options.threads > 0 ? options.threads : default_thread_count()) : 1;
    report.provenance.started_at = utc_timestamp();

    std::vector<Slot> slots;
    std::vector<PairRecord> survivors;
    std::vector<PairOutcome> outcomes;

    for (;;) {
        slots.clear();
        Slot slot;
        while (slots.size() < options.batch_size && in.next_line(slot.line, slot.lineno)) {
            if (options.parses != nullptr) {
                slot.parse_complex = options.parses->next();
                slot.parse_candidate = options.parses->next();
                if (!slot.parse_complex || !slot.parse_candidate)
                    throw DataError(in.source_name(), slot.lineno, "parse file has no blocks for this record");
            }
            slots.push_back(std::move(slot));
            slot = Slot{};
        }
        if (slots.empty()) break;

        for_each_index(slots.size(), options.parallel, options.threads, [&](std::size_t i) {
            Slot& s = slots[i];
            s.pair = parse_pair_line(s.line, s.lineno, in.format(), in.source_name());
            if (s.parse_complex) {
                try {
                    s.pair.depth_complex = dependency_depth(*s.parse_complex);
                    s.pair.depth_simple = dependency_depth(*s.parse_candidate);
                } catch (const MalformedParse& e) {
                    throw DataError(in.source_name(), s.lineno, std::string("malformed parse: ") + e.what());
                }
            }
            if (options.preprocess) {
                auto pre = preprocess_sentence(s.pair.complex, cfg);
                s.dropped = pre.dropped;
                if (pre.kept()) s.pair.complex = std::move(pre.cleaned);
            }
        });

        survivors.clear();
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].dropped) continue;
            survivors.push_back(slots[i].pair);
        }
        outcomes.assign(survivors.size(), PairOutcome{});
        if (options.parallel) {
            evaluate_pairs_parallel(survivors, cfg, freq, outcomes, options.threads);
        } else {
            evaluate_pairs_serial(survivors, cfg, freq, outcomes);
        }

        // Emission and accounting stay serial and in input order.
        std::size_t next_survivor = 0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            ++report.input_count;
            const Slot& s = slots[i];
            if (s.dropped) {
                ++report.preprocess_dropped[static_cast<std::size_t>(*s.dropped)];
                if (options.audit) write_audit(*options.audit, s.pair, nullptr, s.dropped);
                continue;
            }
            const PairOutcome& o = outcomes[next_survivor];
            const PairRecord& pair = survivors[next_survivor];
            ++next_survivor;
            ++report.preprocessed_count;
            report.statistics.complex_preprocessed.add(o.complex);
            if (o.decision.kept) {
                ++report.kept_count;
                report.statistics.silver_complex.add(o.complex);
                report.statistics.silver_simple.add(profile_sentence(pair.candidate, freq, pair.depth_simple));
                report.statistics.silver_pairs.add(*o.metrics);
                silver << format_pair_line(pair) << '\n';
            } else {
                ++report.stage_removals[static_cast<std::size_t>(*o.decision.stage)];
                if (options.audit) write_audit(*options.audit, pair, &o.decision, std::nullopt);
            }
        }
        if (!silver) throw DataError("write error on silver output");
    }

    report.provenance.finished_at = utc_timestamp();
    if (!report.conservation_holds()) throw std::logic_error("build_silver: record counts do not conserve");
    return report;
}

}  // namespace silver
