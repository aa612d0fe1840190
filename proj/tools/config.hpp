#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plurality/experiment.hpp"

namespace plurality::cli {

// Flat typed key-value document with [section] headers, one key = value per
// line, '#' comments. The key schema is closed: unknown sections or keys are
// hard errors, and all seeds must be explicit.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<text>");

    // Flag override, "section.key" form. Schema-checked like file keys.
    void set(const std::string& dotted_key, const std::string& value);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int_or(const std::string& section, const std::string& key,
                            std::int64_t fallback) const;
    std::uint64_t get_seed(const std::string& section, const std::string& key) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& section,
                                           const std::string& key) const;

    // Sorted "section.key=value" lines; the config hash is FNV-1a over this.
    std::string canonical() const;
    std::uint64_t hash() const;

    GraphDescriptor graph_descriptor() const;
    ExperimentSpec experiment_spec() const;

private:
    std::map<std::string, std::string> values_;  // "section.key" -> raw value
};

}  // namespace plurality::cli
