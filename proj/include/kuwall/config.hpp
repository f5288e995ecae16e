#pragma once

#include <yaml-cpp/yaml.h>

#include <map>
#include <string>

#include "kuwall/character.hpp"

namespace kuwall {

enum class OutputFormat { text, json, csv };

struct Config {
    Rational alpha_sq_min{1, 400};
    unsigned long long search_box_limit = 50'000'000ULL;
    OutputFormat output_format = OutputFormat::text;
    std::map<std::string, Character> presets = default_presets();
};

inline OutputFormat parse_output_format(const std::string& s)
{
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw ParseError("output_format must be text, json or csv (got '" + s + "')");
}

/// Keys: alpha_sq_min, search_box_limit, output_format, presets (name -> character).
inline Config parse_config(const YAML::Node& root)
{
    Config c;
    if (!root || root.IsNull()) return c;
    if (!root.IsMap()) throw ParseError("config: top level must be a mapping");
    try {
        if (root["alpha_sq_min"]) c.alpha_sq_min = Rational::parse(root["alpha_sq_min"].as<std::string>());
        if (root["search_box_limit"]) {
            const long long n = root["search_box_limit"].as<long long>();
            if (n <= 0) throw ParseError("config: search_box_limit must be positive");
            c.search_box_limit = static_cast<unsigned long long>(n);
        }
        if (root["output_format"]) c.output_format = parse_output_format(root["output_format"].as<std::string>());
        for (const auto& kv : root["presets"]) {
            const std::string name = kv.first.as<std::string>();
            c.presets[name] = parse_character(kv.second.as<std::string>(), c.presets);
        }
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (c.alpha_sq_min.sign() <= 0) throw ParseError("config: alpha_sq_min must be positive");
    return c;
}

inline Config load_config(const std::string& path)
{
    try {
        return parse_config(YAML::LoadFile(path));
    } catch (const YAML::Exception& e) {
        throw ParseError("cannot read config '" + path + "': " + e.what());
    }
}

} // namespace kuwall
