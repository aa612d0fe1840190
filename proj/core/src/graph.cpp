#include "plurality/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "plurality/rng.hpp"

namespace plurality {

Graph Graph::from_adjacency(std::vector<std::vector<int>> adj) {
    Graph g;
    g.n_ = static_cast<int>(adj.size());
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
    }
    std::int64_t degree_sum = 0;
    std::int64_t loops = 0;
    for (int v = 0; v < g.n_; ++v) {
        const auto& list = adj[v];
        for (std::size_t i = 0; i < list.size(); ++i) {
            int u = list[i];
            if (u < 0 || u >= g.n_) {
                throw std::invalid_argument("adjacency entry out of range");
            }
            if (i > 0 && list[i] == list[i - 1]) {
                throw std::invalid_argument("duplicate neighbour (multi-edge)");
            }
            if (u == v) {
                ++loops;
            } else {
                const auto& back = adj[u];
                if (!std::binary_search(back.begin(), back.end(), v)) {
                    throw std::invalid_argument("asymmetric adjacency");
                }
            }
        }
        degree_sum += static_cast<std::int64_t>(list.size());
    }
    g.degree_sum_ = degree_sum;
    g.loop_count_ = loops;
    g.m_ = (degree_sum + loops) / 2;  // non-loop edges appear in two lists
    g.adj_ = std::move(adj);
    return g;
}

Graph new_complete_with_loops(int n) {
    if (n < 1) throw std::invalid_argument("complete-with-loops requires n >= 1");
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> adj(n, all);
    return Graph::from_adjacency(std::move(adj));
}

Graph new_odd_cycle(int n) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("odd cycle requires odd n >= 3");
    }
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        adj[v] = {(v + n - 1) % n, (v + 1) % n};
    }
    return Graph::from_adjacency(std::move(adj));
}

Graph new_torus_grid(int rows, int cols) {
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("torus grid requires rows, cols >= 3");
    }
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            adj[id(r, c)] = {id((r + rows - 1) % rows, c), id((r + 1) % rows, c),
                             id(r, (c + cols - 1) % cols), id(r, (c + 1) % cols)};
        }
    }
    return Graph::from_adjacency(std::move(adj));
}

namespace {

// One Steger-Wormald pairing attempt: draw uniform stub pairs but skip any
// pair that would create a loop or a duplicate edge, restarting only when no
// admissible pair remains. Near-uniform for d = o(n^{1/3}) and, unlike
// whole-pairing rejection, its success probability does not decay like
// exp(-d^2/4).
std::optional<std::vector<std::vector<int>>> try_pairing(int n, int d, RngStream& rng) {
    std::vector<int> stubs(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) {
        std::fill_n(stubs.begin() + static_cast<std::size_t>(v) * d, d, v);
    }
    std::vector<std::vector<int>> adj(n);
    for (auto& list : adj) list.reserve(d);
    auto linked = [&](int u, int v) {
        return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
    };
    std::size_t live = stubs.size();
    while (live > 1) {
        // A bounded number of uniform draws; if every draw collides the
        // remaining stubs are likely pairwise inadmissible, so restart.
        bool paired = false;
        for (int probe = 0; probe < 64 && !paired; ++probe) {
            std::size_t i = rng.next_below(live);
            std::size_t j = rng.next_below(live - 1);
            if (j >= i) ++j;
            int u = stubs[i], v = stubs[j];
            if (u == v || linked(u, v)) continue;
            adj[u].push_back(v);
            adj[v].push_back(u);
            // Move the chosen stubs past the live region.
            if (i < j) std::swap(i, j);
            std::swap(stubs[i], stubs[live - 1]);
            std::swap(stubs[j], stubs[live - 2]);
            live -= 2;
            paired = true;
        }
        if (!paired) return std::nullopt;
    }
    return adj;
}

}  // namespace

Graph new_random_regular(int n, int d, std::uint64_t seed, RegularGenStats* stats) {
    if (d < 3 || d >= n) throw std::invalid_argument("random regular requires 3 <= d < n");
    if ((static_cast<std::int64_t>(n) * d) % 2 != 0) {
        throw std::invalid_argument("random regular requires n*d even");
    }
    const long budget = 1000 * (1 + static_cast<long>(d) * d / n);
    RegularGenStats local;
    RegularGenStats& st = stats ? *stats : local;
    // Regenerate (new sub-seed) until connected and non-bipartite.
    for (int regen = 0; regen < 64; ++regen) {
        RngStream rng(seed ^ static_cast<std::uint64_t>(regen));
        for (long attempt = 0; attempt < budget; ++attempt) {
            ++st.pairing_attempts;
            if (auto adj = try_pairing(n, d, rng)) {
                Graph g = Graph::from_adjacency(std::move(*adj));
                ValidationReport rep = validate(g);
                if (rep.connected && !rep.bipartite) return g;
                ++st.regenerations;
                break;  // fresh sub-seed
            }
            if (attempt + 1 == budget) {
                throw std::runtime_error("configuration model retry budget exhausted");
            }
        }
    }
    throw std::runtime_error("could not generate a connected non-bipartite regular graph");
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int n = -1;
    std::int64_t m = -1;
    std::vector<std::vector<int>> adj;
    std::int64_t edges_read = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ss(stripped);
        long long a, b;
        if (!(ss >> a)) continue;  // blank / comment line
        if (!(ss >> b)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed line");
        }
        std::string trailing;
        if (ss >> trailing) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed line");
        }
        if (n < 0) {
            if (a < 1 || b < 0) throw std::runtime_error(path + ": bad header");
            n = static_cast<int>(a);
            m = b;
            adj.resize(n);
            continue;
        }
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": vertex out of range");
        }
        int u = static_cast<int>(a), v = static_cast<int>(b);
        adj[u].push_back(v);
        if (u != v) adj[v].push_back(u);
        ++edges_read;
    }
    if (n < 0) throw std::runtime_error(path + ": missing header");
    if (edges_read != m) {
        throw std::runtime_error(path + ": header promises " + std::to_string(m) +
                                 " edges, found " + std::to_string(edges_read));
    }
    return Graph::from_adjacency(std::move(adj));
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (int u : g.neighbors(v)) {
            if (u >= v) out << v << ' ' << u << '\n';
        }
    }
}

ValidationReport validate(const Graph& g) {
    ValidationReport rep;
    const int n = g.vertex_count();
    if (n == 0) return rep;
    // BFS with 2-colouring; bipartite iff no odd cycle (loops are odd cycles).
    std::vector<int> color(n, -1);
    std::deque<int> queue{0};
    color[0] = 0;
    int visited = 1;
    bool bipartite = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.neighbors(v)) {
            if (u == v) {
                bipartite = false;
                continue;
            }
            if (color[u] < 0) {
                color[u] = 1 - color[v];
                ++visited;
                queue.push_back(u);
            } else if (color[u] == color[v]) {
                bipartite = false;
            }
        }
    }
    rep.connected = (visited == n);
    rep.bipartite = bipartite;
    int d0 = g.degree(0);
    bool regular = true;
    for (int v = 1; v < n && regular; ++v) regular = (g.degree(v) == d0);
    if (regular) rep.regular_degree = d0;
    return rep;
}

Graph GraphDescriptor::build() const {
    switch (family) {
        case Family::complete_with_loops: return new_complete_with_loops(n);
        case Family::odd_cycle: return new_odd_cycle(n);
        case Family::random_regular: return new_random_regular(n, d, seed);
        case Family::torus_grid: return new_torus_grid(rows, cols);
        case Family::file: return load_edge_list(path);
    }
    throw std::logic_error("unreachable");
}

std::string GraphDescriptor::describe() const {
    switch (family) {
        case Family::complete_with_loops:
            return "complete-with-loops(n=" + std::to_string(n) + ")";
        case Family::odd_cycle:
            return "odd-cycle(n=" + std::to_string(n) + ")";
        case Family::random_regular:
            return "random-regular(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                   ",seed=" + std::to_string(seed) + ")";
        case Family::torus_grid:
            return "torus-grid(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
        case Family::file:
            return "file(" + path + ")";
    }
    return {};
}

}  // namespace plurality
