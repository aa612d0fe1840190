#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plurality {

struct ValidationReport {
    bool connected = false;
    bool bipartite = false;
    std::optional<int> regular_degree;  // set iff all degrees equal
};

// Immutable simple undirected graph stored as sorted adjacency lists.
// A self-loop is listed once in its vertex's list and contributes 1 to the
// degree, so P(x, y) = 1/d(x) for every listed neighbour. Only the
// complete-with-loops generator produces loops.
class Graph {
public:
    // Takes ownership of the adjacency lists; validates symmetry and
    // rejects duplicate neighbours. Lists are sorted internally.
    static Graph from_adjacency(std::vector<std::vector<int>> adj);

    int vertex_count() const { return n_; }
    // Undirected edge count; a self-loop counts as one edge.
    std::int64_t edge_count() const { return m_; }
    // Sum of degrees. Equals 2m for loop-free graphs; the stationary
    // distribution is d(x) / degree_sum in general.
    std::int64_t degree_sum() const { return degree_sum_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    bool has_loops() const { return loop_count_ > 0; }

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    Graph() = default;
    int n_ = 0;
    std::int64_t m_ = 0;
    std::int64_t degree_sum_ = 0;
    std::int64_t loop_count_ = 0;
    std::vector<std::vector<int>> adj_;
};

// Every vertex adjacent to all n vertices including itself: degree n,
// P(x, y) = 1/n for all x, y.
Graph new_complete_with_loops(int n);

// 2-regular cycle; n must be odd (>= 3) so the graph is non-bipartite.
Graph new_odd_cycle(int n);

// Wrap-around rows x cols grid, 4-regular (rows, cols >= 3). Bipartite
// when both dimensions are even.
Graph new_torus_grid(int rows, int cols);

struct RegularGenStats {
    int pairing_attempts = 0;    // configuration-model rejections + 1
    int regenerations = 0;       // connectivity / bipartiteness retries
};

// Configuration model with whole-pairing rejection of loops and
// multi-edges; requires n*d even and 3 <= d < n. The result is validated
// connected and non-bipartite, regenerating under sub-seed
// (seed XOR attempt) otherwise. Deterministic given seed.
Graph new_random_regular(int n, int d, std::uint64_t seed,
                         RegularGenStats* stats = nullptr);

// Text edge list: header "n m", then one "u v" pair per line (0-based,
// each undirected edge once, loops as "v v").
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

ValidationReport validate(const Graph& g);

// Descriptor for the graph families the experiment configs can name.
struct GraphDescriptor {
    enum class Family { complete_with_loops, odd_cycle, random_regular, torus_grid, file };
    Family family = Family::complete_with_loops;
    int n = 0;
    int d = 0;
    int rows = 0;
    int cols = 0;
    std::uint64_t seed = 0;
    std::string path;

    Graph build() const;
    std::string describe() const;
};

}  // namespace plurality
