#include <charconv>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "silver/corpus.hpp"
#include "silver/errors.hpp"
#include "silver/unicode.hpp"

namespace silver {

PairFormat parse_pair_format(std::string_view name) {
    if (name == "auto" || name == "automatic") return PairFormat::automatic;
    if (name == "jsonl" || name == "json") return PairFormat::jsonl;
    if (name == "tsv") return PairFormat::tsv;
    throw ConfigError("unknown pair format \"" + std::string(name) + "\" (expected auto, jsonl or tsv)");
}

namespace {

PairRecord parse_json_line(std::string_view line, std::size_t lineno, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(source, lineno, std::string("malformed JSON record: ") + e.what());
    }
    if (!j.is_object()) throw DataError(source, lineno, "record is not a JSON object");

    auto text_field = [&](const char* key, bool required) -> std::string {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            if (required) throw DataError(source, lineno, std::string("missing field \"") + key + "\"");
            return {};
        }
        if (!it->is_string()) throw DataError(source, lineno, std::string("field \"") + key + "\" must be a string");
        return it->get<std::string>();
    };

    PairRecord p;
    if (auto it = j.find("failed"); it != j.end() && !it->is_null()) {
        if (!it->is_boolean()) throw DataError(source, lineno, "field \"failed\" must be a boolean");
        p.failed = it->get<bool>();
    }
    auto complex = text_field("complex", true);
    auto candidate = text_field("candidate", !p.failed);
    if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
        if (it->is_string()) {
            p.id = it->get<std::string>();
        } else if (it->is_number_integer()) {
            p.id = it->dump();
        } else {
            throw DataError(source, lineno, "field \"id\" must be a string or integer");
        }
    }
    p.complex = SentenceRecord::from_text(std::move(complex));
    p.candidate = SentenceRecord::from_text(std::move(candidate));
    p.line = lineno;
    return p;
}

PairRecord parse_tsv_line(std::string_view line, std::size_t lineno, const std::string& source) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos)
        throw DataError(source, lineno, "expected exactly two tab-separated columns");
    PairRecord p = PairRecord::from_texts(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
    p.line = lineno;
    return p;
}

}  // namespace

PairRecord parse_pair_line(std::string_view line, std::size_t lineno, PairFormat format,
                           const std::string& source) {
    if (!unicode::is_valid(line)) throw DataError(source, lineno, "encoding error: invalid UTF-8");
    if (format == PairFormat::automatic) {
        const auto first = line.find_first_not_of(" \t");
        format = first != std::string_view::npos && line[first] == '{' ? PairFormat::jsonl : PairFormat::tsv;
    }
    return format == PairFormat::jsonl ? parse_json_line(line, lineno, source)
                                       : parse_tsv_line(line, lineno, source);
}

std::string format_pair_line(const PairRecord& pair) {
    nlohmann::ordered_json j;
    if (pair.id) j["id"] = *pair.id;
    j["complex"] = pair.complex.raw_text;
    j["candidate"] = pair.candidate.raw_text;
    if (pair.failed) j["failed"] = true;
    return j.dump();
}

// ---------------------------------------------------------------------------

LineReader::LineReader(std::istream& in, std::string source_name) : in_(&in), source_(std::move(source_name)) {}

LineReader::LineReader(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()), source_(path.string()) {
    if (!*owned_) throw DataError("cannot open " + source_);
}

bool LineReader::next(std::string& line, std::size_t& lineno) {
    while (std::getline(*in_, line)) {
        ++lineno_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lineno = lineno_;
        return true;
    }
    if (in_->bad()) throw DataError("read error on " + source_);
    return false;
}

PairReader::PairReader(std::istream& in, std::string source_name, PairFormat format)
    : lines_(in, std::move(source_name)), format_(format) {}

PairReader::PairReader(const std::filesystem::path& path, PairFormat format) : lines_(path), format_(format) {}

std::optional<PairRecord> PairReader::next() {
    std::string line;
    std::size_t lineno = 0;
    if (!lines_.next(line, lineno)) return std::nullopt;
    return parse_pair_line(line, lineno, format_, lines_.source_name());
}

std::vector<PairRecord> read_all_pairs(const std::filesystem::path& path, PairFormat format) {
    PairReader reader(path, format);
    std::vector<PairRecord> out;
    while (auto p = reader.next()) out.push_back(std::move(*p));
    return out;
}

// ---------------------------------------------------------------------------

ParseReader::ParseReader(std::istream& in, std::string source_name) : in_(&in), source_(std::move(source_name)) {}

ParseReader::ParseReader(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path)), in_(owned_.get()), source_(path.string()) {
    if (!*owned_) throw DataError("cannot open parse file " + source_);
}

std::optional<DependencyParse> ParseReader::next() {
    DependencyParse parse;
    std::string line;
    while (std::getline(*in_, line)) {
        ++lineno_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) {
            if (parse.heads.empty()) continue;
            return parse;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw DataError(source_, lineno_, "expected token_index<TAB>head_index");
        int index = 0;
        int head = 0;
        const char* b = line.data();
        const char* e = line.data() + line.size();
        auto r1 = std::from_chars(b, b + tab, index);
        auto r2 = std::from_chars(b + tab + 1, e, head);
        if (r1.ec != std::errc{} || r1.ptr != b + tab || r2.ec != std::errc{} || r2.ptr != e)
            throw DataError(source_, lineno_, "indices must be integers");
        if (index != static_cast<int>(parse.heads.size()) + 1)
            throw DataError(source_, lineno_, "token indices must run 1, 2, 3, ... within a block");
        parse.heads.push_back(head);
    }
    if (in_->bad()) throw DataError("read error on " + source_);
    if (parse.heads.empty()) return std::nullopt;
    return parse;
}

}  // namespace silver
