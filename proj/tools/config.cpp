#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plurality::cli {

namespace {

const std::set<std::string>& schema() {
    static const std::set<std::string> keys = {
        "graph.family", "graph.n", "graph.d", "graph.rows", "graph.cols", "graph.seed",
        "graph.path",
        "initial.sizes", "initial.placement",
        "protocol.rule", "protocol.walk_length", "protocol.tie_keep_own",
        "campaign.kind", "campaign.trials", "campaign.max_rounds", "campaign.seed",
        "campaign.sweep_n", "campaign.ell_values", "campaign.drift_class",
        "campaign.workers",
        "output.json", "output.csv", "output.no_timestamp",
    };
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') fail(origin, lineno, "unterminated section header");
            section = trim(stripped.substr(1, stripped.size() - 2));
            continue;
        }
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (section.empty()) fail(origin, lineno, "key outside any [section]");
        std::string dotted = section + "." + key;
        if (!schema().count(dotted)) fail(origin, lineno, "unknown key '" + dotted + "'");
        if (cfg.values_.count(dotted)) fail(origin, lineno, "duplicate key '" + dotted + "'");
        cfg.values_[dotted] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

void Config::set(const std::string& dotted_key, const std::string& value) {
    if (!schema().count(dotted_key)) {
        throw std::runtime_error("unknown key '" + dotted_key + "'");
    }
    values_[dotted_key] = value;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) > 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    auto it = values_.find(section + "." + key);
    if (it == values_.end()) {
        throw std::runtime_error("missing required key '" + section + "." + key + "'");
    }
    return it->second;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::size_t used = 0;
    std::int64_t v = std::stoll(raw, &used);
    if (used != raw.size()) {
        throw std::runtime_error("key '" + section + "." + key + "' is not an integer: " + raw);
    }
    return v;
}

std::int64_t Config::get_int_or(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::size_t used = 0;
    std::uint64_t v = std::stoull(raw, &used);
    if (used != raw.size()) {
        throw std::runtime_error("key '" + section + "." + key + "' is not a seed: " + raw);
    }
    return v;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key);
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw std::runtime_error("key '" + section + "." + key + "' must be true or false");
}

std::vector<std::int64_t> Config::get_int_list(const std::string& section,
                                               const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::vector<std::int64_t> out;
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size()) {
            throw std::runtime_error("bad integer '" + item + "' in '" + section + "." + key + "'");
        }
    }
    if (out.empty()) throw std::runtime_error("empty list for '" + section + "." + key + "'");
    return out;
}

std::string Config::canonical() const {
    std::ostringstream os;
    for (const auto& [k, v] : values_) os << k << '=' << v << '\n';
    return os.str();
}

std::uint64_t Config::hash() const {
    // FNV-1a over the canonical text.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canonical()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

GraphDescriptor Config::graph_descriptor() const {
    GraphDescriptor desc;
    const std::string family = get_string("graph", "family");
    using F = GraphDescriptor::Family;
    if (family == "complete-with-loops") {
        desc.family = F::complete_with_loops;
        desc.n = static_cast<int>(get_int("graph", "n"));
    } else if (family == "odd-cycle") {
        desc.family = F::odd_cycle;
        desc.n = static_cast<int>(get_int("graph", "n"));
    } else if (family == "random-regular") {
        desc.family = F::random_regular;
        desc.n = static_cast<int>(get_int("graph", "n"));
        desc.d = static_cast<int>(get_int("graph", "d"));
        desc.seed = get_seed("graph", "seed");
    } else if (family == "torus-grid") {
        desc.family = F::torus_grid;
        desc.rows = static_cast<int>(get_int("graph", "rows"));
        desc.cols = static_cast<int>(get_int("graph", "cols"));
    } else if (family == "file") {
        desc.family = F::file;
        desc.path = get_string("graph", "path");
    } else {
        throw std::runtime_error("unknown graph.family '" + family + "'");
    }
    return desc;
}

ExperimentSpec Config::experiment_spec() const {
    ExperimentSpec spec;
    spec.graph = graph_descriptor();
    spec.sizes = get_int_list("initial", "sizes");
    spec.placement = placement_from_name(get_string_or("initial", "placement", "random"));
    spec.protocol.rule = rule_from_name(get_string_or("protocol", "rule", "two-sample"));
    spec.protocol.walk_length =
        static_cast<int>(get_int_or("protocol", "walk_length", 1));
    spec.protocol.tie_keep_own = get_bool_or("protocol", "tie_keep_own", false);
    spec.campaign = campaign_from_name(get_string_or("campaign", "kind", "win-probability"));
    spec.trials = static_cast<int>(get_int_or("campaign", "trials", 100));
    spec.max_rounds = static_cast<int>(get_int_or("campaign", "max_rounds", 1000));
    spec.seed = get_seed("campaign", "seed");  // wall-clock seeding is not a thing here
    if (has("campaign", "sweep_n")) {
        for (auto v : get_int_list("campaign", "sweep_n")) {
            spec.sweep_n.push_back(static_cast<int>(v));
        }
    }
    if (has("campaign", "ell_values")) {
        for (auto v : get_int_list("campaign", "ell_values")) {
            spec.ell_values.push_back(static_cast<int>(v));
        }
    }
    spec.drift_class = static_cast<int>(get_int_or("campaign", "drift_class", 0));
    spec.workers = static_cast<int>(get_int_or("campaign", "workers", 1));
    if (spec.trials < 1) throw std::runtime_error("campaign.trials must be >= 1");
    return spec;
}

}  // namespace plurality::cli
