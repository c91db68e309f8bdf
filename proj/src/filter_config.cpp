#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "silver/errors.hpp"
#include "silver/filtering.hpp"
#include "silver/json_io.hpp"

namespace silver {

namespace {

std::string normalize_name(std::string_view name) {
    std::string out(name);
    for (auto& c : out)
        if (c == '-') c = '_';
    return out;
}

std::size_t parse_size(std::string_view field, std::string_view value) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(std::string(field) + ": expected a non-negative integer, got \"" +
                          std::string(value) + "\"");
    return v;
}

double parse_double(std::string_view field, std::string_view value) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(std::string(field) + ": expected a number, got \"" + std::string(value) + "\"");
    return v;
}

bool parse_bool(std::string_view field, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(std::string(field) + ": expected true/false, got \"" + std::string(value) + "\"");
}

std::vector<std::string> parse_list(std::string_view field, std::string_view value) {
    if (!value.empty() && value.front() == '[') {
        try {
            return nlohmann::json::parse(value).get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string(field) + ": " + e.what());
        }
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto end = comma == std::string_view::npos ? value.size() : comma;
        if (end > start) out.emplace_back(value.substr(start, end - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

void FilterConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("invalid filter config: ") + what);
    };
    require(min_tokens >= 1, "min_tokens must be >= 1");
    require(max_tokens >= min_tokens, "max_tokens must be >= min_tokens");
    require(min_alpha_ratio > 0.0 && min_alpha_ratio <= 1.0, "min_alpha_ratio must be in (0,1]");
    require(numeric_run_min >= 1, "numeric_run_min must be >= 1");
    require(numeric_min_digits >= 1, "numeric_min_digits must be >= 1");
    require(sim_low > 0.0 && sim_low < sim_high && sim_high <= 1.0, "need 0 < sim_low < sim_high <= 1");
    require(substring_sim > 0.0 && substring_sim <= 1.0, "substring_sim must be in (0,1]");
    require(sorted_sim > 0.0 && sorted_sim <= 1.0, "sorted_sim must be in (0,1]");
    require(compression_low > 0.0 && compression_low < 1.0 && compression_high > 1.0,
            "need 0 < compression_low < 1 < compression_high");
}

nlohmann::ordered_json config_to_json(const FilterConfig& c) {
    return nlohmann::ordered_json{
        {"min_tokens", c.min_tokens},
        {"max_tokens", c.max_tokens},
        {"min_alpha_ratio", c.min_alpha_ratio},
        {"unknown_token_markers", c.unknown_token_markers},
        {"numeric_run_min", c.numeric_run_min},
        {"numeric_min_digits", c.numeric_min_digits},
        {"sim_low", c.sim_low},
        {"sim_high", c.sim_high},
        {"substring_sim", c.substring_sim},
        {"sorted_sim", c.sorted_sim},
        {"compression_low", c.compression_low},
        {"compression_high", c.compression_high},
        {"simplicity_strict", c.simplicity_strict},
        {"depth_criterion_enabled", c.depth_criterion_enabled},
    };
}

const std::vector<std::string>& FilterConfig::field_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        const auto defaults = config_to_json(FilterConfig{});
        for (const auto& item : defaults.items()) out.push_back(item.key());
        return out;
    }();
    return names;
}

std::string FilterConfig::to_text() const { return config_to_json(*this).dump(2) + "\n"; }

FilterConfig FilterConfig::from_text(std::string_view json_text, const std::string& source_name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(source_name + ": expected a JSON object");

    FilterConfig cfg;
    for (const auto& [key, value] : j.items()) {
        // Route every field through set_field so files and flags share one parser.
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else {
            text = value.dump();
        }
        try {
            cfg.set_field(key, text);
        } catch (const ConfigError& e) {
            throw ConfigError(source_name + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

FilterConfig FilterConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str(), path.string());
}

void FilterConfig::set_field(std::string_view raw_name, std::string_view value) {
    const std::string name = normalize_name(raw_name);
    if (name == "min_tokens") min_tokens = parse_size(name, value);
    else if (name == "max_tokens") max_tokens = parse_size(name, value);
    else if (name == "min_alpha_ratio" || name == "min_alpha") min_alpha_ratio = parse_double(name, value);
    else if (name == "unknown_token_markers") unknown_token_markers = parse_list(name, value);
    else if (name == "numeric_run_min") numeric_run_min = parse_size(name, value);
    else if (name == "numeric_min_digits") numeric_min_digits = parse_size(name, value);
    else if (name == "sim_low") sim_low = parse_double(name, value);
    else if (name == "sim_high") sim_high = parse_double(name, value);
    else if (name == "substring_sim") substring_sim = parse_double(name, value);
    else if (name == "sorted_sim") sorted_sim = parse_double(name, value);
    else if (name == "compression_low") compression_low = parse_double(name, value);
    else if (name == "compression_high") compression_high = parse_double(name, value);
    else if (name == "simplicity_strict") simplicity_strict = parse_bool(name, value);
    else if (name == "depth_criterion_enabled") depth_criterion_enabled = parse_bool(name, value);
    else throw ConfigError("unknown config field \"" + std::string(raw_name) + "\"");
}

}  // namespace silver
