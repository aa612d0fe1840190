#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plurality/graph.hpp"
#include "plurality/rng.hpp"
#include "plurality/vertex_set.hpp"

namespace plurality {

enum class Rule { one_sample, two_sample, three_sample };

std::string rule_name(Rule rule);
Rule rule_from_name(const std::string& name);

struct ProtocolSpec {
    Rule rule = Rule::two_sample;
    int walk_length = 1;  // samples are endpoints of walks of this length
    // Non-standard three-sample tie-break: keep own opinion instead of
    // adopting the first sample. Off by default.
    bool tie_keep_own = false;
};

// Per-vertex opinion labels with maintained class counts. Labels are
// stable: classes keep their index even when they empty out mid-run.
struct OpinionConfig {
    std::vector<int> opinion;
    std::vector<std::int64_t> sizes;
    int round = 0;

    static OpinionConfig from_labels(std::vector<int> opinion, int k);
    int k() const { return static_cast<int>(sizes.size()); }
    int n() const { return static_cast<int>(opinion.size()); }
    // Returns the winning class if one class holds every vertex, else -1.
    int unanimous_class() const;
    VertexSet class_set(int j) const;
};

enum class Outcome { consensus, timeout };

struct RunTrace {
    std::uint64_t seed = 0;
    ProtocolSpec protocol;
    std::vector<std::vector<std::int64_t>> size_history;  // index 0 = initial
    Outcome outcome = Outcome::timeout;
    int winner = -1;
    int rounds_used = 0;

    std::string to_json_line() const;
    // One row per round: round,size_0,...,size_{k-1}.
    std::string to_csv() const;
};

// Terminal vertex of an ell-step uniform walk from v (ell >= 1; each step
// picks a uniform entry of the adjacency list, so loops behave as P(x,x)).
int sample_endpoint(const Graph& g, int v, int ell, RngStream& rng);

// One synchronous round: every vertex samples from the round-t snapshot
// (with replacement) and all updates land in the round-t+1 buffer. Each
// vertex uses the stream derived from (seed, round, vertex), so the result
// is independent of evaluation order.
OpinionConfig step(const Graph& g, const OpinionConfig& config,
                   const ProtocolSpec& protocol, std::uint64_t seed);

// Iterates step until unanimity or max_rounds. Deterministic given seed.
RunTrace run(const Graph& g, const OpinionConfig& initial, const ProtocolSpec& protocol,
             int max_rounds, std::uint64_t seed);

enum class Placement { random, adversarial_ball };

std::string placement_name(Placement p);
Placement placement_from_name(const std::string& name);

// Assigns exact class sizes: `random` permutes vertices uniformly;
// `adversarial_ball` fills classes along a breadth-first order from vertex
// 0, producing contiguous clustered blocks.
OpinionConfig place_opinions(const Graph& g, const std::vector<std::int64_t>& sizes,
                             Placement placement, std::uint64_t seed);

}  // namespace plurality
