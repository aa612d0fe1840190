#include <doctest.h>

#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include "plurality/graph.hpp"

using namespace plurality;

namespace {
std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return std::string("/tmp/plurality_test_") + name;
}
}  // namespace

TEST_CASE("complete-with-loops basics") {
    Graph g1 = new_complete_with_loops(1);
    CHECK(g1.vertex_count() == 1);
    CHECK(g1.degree(0) == 1);
    CHECK(g1.neighbors(0) == std::vector<int>{0});

    Graph g3 = new_complete_with_loops(3);
    for (int v = 0; v < 3; ++v) {
        CHECK(g3.degree(v) == 3);
        CHECK(g3.neighbors(v) == std::vector<int>{0, 1, 2});
    }
    CHECK(g3.degree_sum() == 9);

    CHECK_THROWS_AS(new_complete_with_loops(0), std::invalid_argument);
}

TEST_CASE("odd cycle") {
    Graph k3 = new_odd_cycle(3);
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    ValidationReport rep = validate(k3);
    CHECK(rep.connected);
    CHECK_FALSE(rep.bipartite);
    CHECK(rep.regular_degree == 2);

    CHECK_THROWS_AS(new_odd_cycle(4), std::invalid_argument);
    CHECK_THROWS_AS(new_odd_cycle(1), std::invalid_argument);
}

TEST_CASE("random regular generator") {
    Graph g = new_random_regular(10, 3, 1);
    CHECK(g.vertex_count() == 10);
    for (int v = 0; v < 10; ++v) CHECK(g.degree(v) == 3);
    // determinism
    CHECK(new_random_regular(10, 3, 1) == g);
    CHECK_FALSE(new_random_regular(10, 3, 2) == g);

    CHECK_THROWS_AS(new_random_regular(5, 3, 1), std::invalid_argument);  // n*d odd
    CHECK_THROWS_AS(new_random_regular(4, 2, 1), std::invalid_argument);  // d < 3
}

TEST_CASE("random regular over many seeds stays simple, regular, usable") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Graph g = new_random_regular(50, 4, seed);
        ValidationReport rep = validate(g);
        CHECK(rep.connected);
        CHECK_FALSE(rep.bipartite);
        CHECK(rep.regular_degree == 4);
        for (int v = 0; v < 50; ++v) {
            std::set<int> uniq(g.neighbors(v).begin(), g.neighbors(v).end());
            CHECK(uniq.size() == 4);       // no multi-edges
            CHECK(uniq.count(v) == 0);     // no loops
        }
    }
}

TEST_CASE("torus grid") {
    Graph g = new_torus_grid(3, 5);
    CHECK(g.vertex_count() == 15);
    CHECK(validate(g).regular_degree == 4);
    CHECK(validate(g).connected);
    Graph even = new_torus_grid(4, 4);
    CHECK(validate(even).bipartite);
}

TEST_CASE("edge list round trip") {
    Graph c5 = new_odd_cycle(5);
    std::string path = temp_path("roundtrip.txt");
    save_edge_list(c5, path);
    Graph back = load_edge_list(path);
    CHECK(back == c5);
    std::remove(path.c_str());

    Graph k3 = load_edge_list(fixture("triangle.txt"));
    CHECK(k3 == new_odd_cycle(3));
}

TEST_CASE("edge list loader rejects malformed input") {
    auto write = [](const std::string& path, const std::string& body) {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs(body.c_str(), f);
        std::fclose(f);
    };
    std::string path = temp_path("bad.txt");
    write(path, "3 1\n0 5\n");
    CHECK_THROWS(load_edge_list(path));  // vertex out of range
    write(path, "3 2\n0 1\n");
    CHECK_THROWS(load_edge_list(path));  // edge-count mismatch
    write(path, "3 1\n0 1 junk\n");
    CHECK_THROWS(load_edge_list(path));
    std::remove(path.c_str());
}

TEST_CASE("validate reports") {
    CHECK(validate(new_odd_cycle(3)).regular_degree == 2);
    // even cycle is bipartite
    std::vector<std::vector<int>> c6(6);
    for (int v = 0; v < 6; ++v) c6[v] = {(v + 5) % 6, (v + 1) % 6};
    CHECK(validate(Graph::from_adjacency(c6)).bipartite);
    // two disjoint triangles
    std::vector<std::vector<int>> two{{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}};
    CHECK_FALSE(validate(Graph::from_adjacency(two)).connected);
}

TEST_CASE("adjacency validation") {
    CHECK_THROWS(Graph::from_adjacency({{1}, {}}));        // asymmetric
    CHECK_THROWS(Graph::from_adjacency({{1, 1}, {0, 0}})); // multi-edge
    CHECK_THROWS(Graph::from_adjacency({{5}}));            // out of range
}

TEST_CASE("ring of cliques fixture loads and is a poor expander candidate") {
    Graph g = load_edge_list(fixture("ring_of_cliques_20x10.txt"));
    CHECK(g.vertex_count() == 200);
    ValidationReport rep = validate(g);
    CHECK(rep.connected);
    CHECK_FALSE(rep.bipartite);
}
