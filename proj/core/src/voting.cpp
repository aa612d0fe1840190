#include "plurality/voting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plurality {

std::string rule_name(Rule rule) {
    switch (rule) {
        case Rule::one_sample: return "one-sample";
        case Rule::two_sample: return "two-sample";
        case Rule::three_sample: return "three-sample";
    }
    return {};
}

Rule rule_from_name(const std::string& name) {
    if (name == "one-sample") return Rule::one_sample;
    if (name == "two-sample") return Rule::two_sample;
    if (name == "three-sample") return Rule::three_sample;
    throw std::invalid_argument("unknown rule: " + name);
}

std::string placement_name(Placement p) {
    return p == Placement::random ? "random" : "adversarial-ball";
}

Placement placement_from_name(const std::string& name) {
    if (name == "random") return Placement::random;
    if (name == "adversarial-ball") return Placement::adversarial_ball;
    throw std::invalid_argument("unknown placement: " + name);
}

OpinionConfig OpinionConfig::from_labels(std::vector<int> opinion, int k) {
    OpinionConfig c;
    c.sizes.assign(k, 0);
    for (int l : opinion) {
        if (l < 0 || l >= k) throw std::invalid_argument("opinion label out of range");
        ++c.sizes[l];
    }
    c.opinion = std::move(opinion);
    return c;
}

int OpinionConfig::unanimous_class() const {
    for (int j = 0; j < k(); ++j) {
        if (sizes[j] == n()) return j;
    }
    return -1;
}

VertexSet OpinionConfig::class_set(int j) const {
    VertexSet s(n());
    for (int v = 0; v < n(); ++v) {
        if (opinion[v] == j) s.insert(v);
    }
    return s;
}

int sample_endpoint(const Graph& g, int v, int ell, RngStream& rng) {
    if (ell < 1) throw std::invalid_argument("walk length must be >= 1");
    int cur = v;
    for (int t = 0; t < ell; ++t) {
        const auto& adj = g.neighbors(cur);
        cur = adj[rng.next_below(adj.size())];
    }
    return cur;
}

OpinionConfig step(const Graph& g, const OpinionConfig& config,
                   const ProtocolSpec& protocol, std::uint64_t seed) {
    const int n = config.n();
    OpinionConfig next;
    next.opinion.resize(n);
    next.sizes = config.sizes;
    next.round = config.round + 1;
    const int ell = protocol.walk_length;
    for (int v = 0; v < n; ++v) {
        RngStream rng(seed, static_cast<std::uint64_t>(config.round),
                      static_cast<std::uint64_t>(v));
        int chosen = config.opinion[v];
        switch (protocol.rule) {
            case Rule::one_sample: {
                chosen = config.opinion[sample_endpoint(g, v, ell, rng)];
                break;
            }
            case Rule::two_sample: {
                int a = config.opinion[sample_endpoint(g, v, ell, rng)];
                int b = config.opinion[sample_endpoint(g, v, ell, rng)];
                if (a == b) chosen = a;
                break;
            }
            case Rule::three_sample: {
                int a = config.opinion[sample_endpoint(g, v, ell, rng)];
                int b = config.opinion[sample_endpoint(g, v, ell, rng)];
                int c = config.opinion[sample_endpoint(g, v, ell, rng)];
                if (a == b || a == c) {
                    chosen = a;
                } else if (b == c) {
                    chosen = b;
                } else {
                    chosen = protocol.tie_keep_own ? config.opinion[v] : a;
                }
                break;
            }
        }
        next.opinion[v] = chosen;
        if (chosen != config.opinion[v]) {
            --next.sizes[config.opinion[v]];
            ++next.sizes[chosen];
        }
    }
    return next;
}

RunTrace run(const Graph& g, const OpinionConfig& initial, const ProtocolSpec& protocol,
             int max_rounds, std::uint64_t seed) {
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    RunTrace trace;
    trace.seed = seed;
    trace.protocol = protocol;
    OpinionConfig config = initial;
    config.round = 0;
    trace.size_history.push_back(config.sizes);
    int winner = config.unanimous_class();
    for (int r = 0; r < max_rounds && winner < 0; ++r) {
        config = step(g, config, protocol, seed);
        trace.size_history.push_back(config.sizes);
        winner = config.unanimous_class();
    }
    trace.rounds_used = config.round;
    if (winner >= 0) {
        trace.outcome = Outcome::consensus;
        trace.winner = winner;
    }
    return trace;
}

std::string RunTrace::to_json_line() const {
    std::ostringstream os;
    os << "{\"seed\": " << seed << ", \"rule\": \"" << rule_name(protocol.rule)
       << "\", \"walk_length\": " << protocol.walk_length << ", \"outcome\": \""
       << (outcome == Outcome::consensus ? "consensus" : "timeout")
       << "\", \"winner\": " << winner << ", \"rounds\": " << rounds_used
       << ", \"sizes\": [";
    for (std::size_t r = 0; r < size_history.size(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t j = 0; j < size_history[r].size(); ++j) {
            os << (j ? "," : "") << size_history[r][j];
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

std::string RunTrace::to_csv() const {
    std::ostringstream os;
    os << "round";
    const std::size_t k = size_history.empty() ? 0 : size_history[0].size();
    for (std::size_t j = 0; j < k; ++j) os << ",size_" << j;
    os << '\n';
    for (std::size_t r = 0; r < size_history.size(); ++r) {
        os << r;
        for (std::size_t j = 0; j < k; ++j) os << ',' << size_history[r][j];
        os << '\n';
    }
    return os.str();
}

OpinionConfig place_opinions(const Graph& g, const std::vector<std::int64_t>& sizes,
                             Placement placement, std::uint64_t seed) {
    const int n = g.vertex_count();
    std::int64_t total = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    if (total != n) {
        throw std::invalid_argument("class sizes sum to " + std::to_string(total) +
                                    ", expected " + std::to_string(n));
    }
    std::vector<int> order(n);
    if (placement == Placement::random) {
        std::iota(order.begin(), order.end(), 0);
        RngStream rng(seed, 0x706c6163u);  // placement stream
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
    } else {
        // Each class is grown as its own breadth-first ball over the still
        // unassigned vertices, seeded at the lowest unassigned vertex, so a
        // class occupies one contiguous clustered region.
        order.clear();
        std::vector<char> seen(n, 0);
        int next_root = 0;
        while (static_cast<int>(order.size()) < n) {
            while (next_root < n && seen[next_root]) ++next_root;
            std::deque<int> queue{next_root};
            seen[next_root] = 1;
            std::size_t goal = order.size();
            for (std::size_t j = 0, acc = 0; j < sizes.size(); ++j) {
                acc += static_cast<std::size_t>(sizes[j]);
                if (acc > goal) {
                    goal = acc;  // finish the class the root falls into
                    break;
                }
            }
            while (!queue.empty() && order.size() < goal) {
                int v = queue.front();
                queue.pop_front();
                order.push_back(v);
                for (int u : g.neighbors(v)) {
                    if (!seen[u]) {
                        seen[u] = 1;
                        queue.push_back(u);
                    }
                }
            }
            // Queue leftovers stay unassigned for the next class's ball.
            for (int v : queue) seen[v] = 0;
        }
    }
    std::vector<int> labels(n);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        for (std::int64_t c = 0; c < sizes[j]; ++c) labels[order[pos++]] = static_cast<int>(j);
    }
    return OpinionConfig::from_labels(std::move(labels), static_cast<int>(sizes.size()));
}

}  // namespace plurality
