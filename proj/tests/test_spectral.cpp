#include <doctest.h>

#include <cmath>
#include <vector>

#include "plurality/rng.hpp"
#include "plurality/spectral.hpp"

using namespace plurality;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

VertexSet make_set(int n, std::initializer_list<int> vs) {
    VertexSet s(n);
    for (int v : vs) s.insert(v);
    return s;
}

// Test-only oracle: dense transition matrix and its square, straight from
// the definitions.
std::vector<std::vector<double>> dense_transition(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (int v = 0; v < n; ++v) {
        for (int u : g.neighbors(v)) p[v][u] += 1.0 / g.degree(v);
    }
    return p;
}

std::vector<std::vector<double>> matrix_square(const std::vector<std::vector<double>>& p) {
    int n = static_cast<int>(p.size());
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) q[i][j] += p[i][k] * p[k][j];
    return q;
}

}  // namespace

TEST_CASE("stationary distribution") {
    Graph k3 = new_odd_cycle(3);
    auto pi = stationary(k3);
    for (double p : pi) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-14));

    auto pi4 = stationary(new_complete_with_loops(4));
    for (double p : pi4) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));

    // star: center degree 3, leaves degree 1, 2m = 6
    Graph star = load_edge_list(fixture("star4.txt"));
    auto pis = stationary(star);
    CHECK(pis[0] == doctest::Approx(0.5).epsilon(1e-14));
    for (int v = 1; v < 4; ++v) CHECK(pis[v] == doctest::Approx(1.0 / 6).epsilon(1e-14));

    std::vector<std::vector<int>> two{{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}};
    CHECK_THROWS(stationary(Graph::from_adjacency(two)));
}

TEST_CASE("second eigenvalue closed forms") {
    CHECK(second_eigenvalue(new_complete_with_loops(7)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(second_eigenvalue(new_complete_with_loops(42)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // K3 spectrum {1, -1/2, -1/2}
    CHECK(second_eigenvalue(new_odd_cycle(3)) == doctest::Approx(0.5).epsilon(1e-12));
    // circulant spectrum {cos(2 pi k / n)}
    CHECK(second_eigenvalue(new_odd_cycle(5)) ==
          doctest::Approx(std::cos(M_PI / 5)).epsilon(1e-12));

    Graph star = load_edge_list(fixture("star4.txt"));
    CHECK_THROWS(second_eigenvalue(star));  // bipartite
}

TEST_CASE("dense and iterative eigensolvers agree") {
    for (std::uint64_t seed : {3u, 4u}) {
        Graph g = new_random_regular(120, 4, seed);
        double dense = second_eigenvalue_dense(g);
        double iter = second_eigenvalue_iterative(g);
        CHECK(iter == doctest::Approx(dense).epsilon(1e-9));
    }
    // iterative path also handles the rank-one complete graph
    CHECK(second_eigenvalue_iterative(new_complete_with_loops(30)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("flow function Q") {
    Graph k3 = new_odd_cycle(3);
    auto pi = stationary(k3);
    VertexSet a = make_set(3, {0});
    CHECK(flow_Q(k3, pi, a, a.complement()) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(flow_Q(k3, pi, a, VertexSet::full(3)) == doctest::Approx(1.0 / 3).epsilon(1e-14));

    // reversibility Q(A,B) = Q(B,A) on a non-regular instance
    Graph roc = load_edge_list(fixture("ring_of_cliques_20x10.txt"));
    auto pir = stationary(roc);
    RngStream rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        VertexSet A(200), B(200);
        for (int v = 0; v < 200; ++v) {
            if (rng.next_double() < 0.3) A.insert(v);
            if (rng.next_double() < 0.6) B.insert(v);
        }
        CHECK(flow_Q(roc, pir, A, B) == doctest::Approx(flow_Q(roc, pir, B, A)).epsilon(1e-12));
    }
}

TEST_CASE("two-step flow Q2 matches the dense P^2 oracle") {
    Graph g = new_random_regular(24, 4, 11);
    auto pi = stationary(g);
    auto p2 = matrix_square(dense_transition(g));
    RngStream rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        VertexSet A(24), B(24);
        for (int v = 0; v < 24; ++v) {
            if (rng.next_double() < 0.4) A.insert(v);
            if (rng.next_double() < 0.5) B.insert(v);
        }
        double expect = 0.0;
        for (int x = 0; x < 24; ++x) {
            if (!A.contains(x)) continue;
            for (int y = 0; y < 24; ++y) {
                if (B.contains(y)) expect += pi[x] * p2[x][y];
            }
        }
        CHECK(flow_Q2(g, pi, A, B) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("Q2 point values and additivity") {
    Graph k3 = new_odd_cycle(3);
    auto pi = stationary(k3);
    VertexSet a = make_set(3, {0});
    CHECK(flow_Q2(k3, pi, a, a) == doctest::Approx(1.0 / 6).epsilon(1e-14));  // P^2(0,0)=1/2
    CHECK(flow_Q2(k3, pi, a, VertexSet::full(3)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(flow_Q2(k3, pi, a, a) + flow_Q2(k3, pi, a, a.complement()) ==
          doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("drift functional R") {
    Graph k3 = new_odd_cycle(3);
    auto pi = stationary(k3);
    VertexSet a = make_set(3, {0});
    VertexSet full = VertexSet::full(3);
    CHECK(drift_R(k3, pi, full, a) == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(drift_R(k3, pi, full, a) == doctest::Approx(flow_Q2(k3, pi, a, a)).epsilon(1e-14));
    CHECK(drift_R(k3, pi, a, VertexSet(3)) == 0.0);

    // complete graph with loops: R(V,A) = pi(A)^2 exactly
    Graph c4 = new_complete_with_loops(4);
    auto pi4 = stationary(c4);
    for (int size = 0; size <= 4; ++size) {
        VertexSet A(4);
        for (int v = 0; v < size; ++v) A.insert(v);
        double pa = size / 4.0;
        CHECK(drift_R(c4, pi4, VertexSet::full(4), A) ==
              doctest::Approx(pa * pa).epsilon(1e-14));
    }
}

TEST_CASE("drift functional S over a partition") {
    Graph g = new_random_regular(30, 4, 3);
    auto pi = stationary(g);
    std::vector<int> labels(30);
    for (int v = 0; v < 30; ++v) labels[v] = v % 3;
    Partition C = Partition::from_labels(labels);
    VertexSet A(30);
    for (int v = 0; v < 15; ++v) A.insert(v);

    // S is the sum of R over classes
    double direct = 0.0;
    for (int i = 0; i < 3; ++i) direct += drift_R(g, pi, A, C.class_set(i));
    CHECK(drift_S(g, pi, C, A) == doctest::Approx(direct).epsilon(1e-13));

    // additivity S(A) + S(A^c) = S(V)
    CHECK(drift_S(g, pi, C, A) + drift_S(g, pi, C, A.complement()) ==
          doctest::Approx(drift_S(g, pi, C, VertexSet::full(30))).epsilon(1e-13));

    // single class: S_C(V) = R(V,V) = 1
    Partition one = Partition::from_labels(std::vector<int>(30, 0));
    CHECK(drift_S(g, pi, one, VertexSet::full(30)) == doctest::Approx(1.0).epsilon(1e-13));

    // complete graph: S_C(V) = sum pi(A_i)^2
    Graph c6 = new_complete_with_loops(6);
    auto pi6 = stationary(c6);
    Partition C6 = Partition::from_labels({0, 0, 0, 1, 1, 2});
    double expect = std::pow(0.5, 2) + std::pow(2.0 / 6, 2) + std::pow(1.0 / 6, 2);
    CHECK(drift_S(c6, pi6, C6, VertexSet::full(6)) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("mixing bound is tight on K3") {
    Graph k3 = new_odd_cycle(3);
    auto pi = stationary(k3);
    VertexSet a = make_set(3, {0});
    double q = flow_Q(k3, pi, a, a.complement());
    double lhs = std::abs(q - (1.0 / 3) * (2.0 / 3));
    CHECK(lhs == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(lhs == doctest::Approx(0.5 * (1.0 / 3) * (2.0 / 3)).epsilon(1e-14));
}

TEST_CASE("expected change") {
    Graph g = new_random_regular(40, 4, 9);
    auto pi = stationary(g);

    // absorbing single-opinion partition
    Partition one = Partition::from_labels(std::vector<int>(40, 0));
    CHECK(expected_change(g, pi, one, 0) == doctest::Approx(1.0).epsilon(1e-13));

    // measure conservation across classes
    std::vector<int> labels(40);
    for (int v = 0; v < 40; ++v) labels[v] = v < 20 ? 0 : (v < 32 ? 1 : 2);
    Partition C = Partition::from_labels(labels);
    double total = 0.0;
    for (int j = 0; j < 3; ++j) total += expected_change(g, pi, C, j);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // complete graph closed form: pi_j (1 + pi_j - sum pi_i^2)
    Graph c = new_complete_with_loops(10);
    auto pic = stationary(c);
    std::vector<int> lc(10);
    for (int v = 0; v < 10; ++v) lc[v] = v < 5 ? 0 : (v < 8 ? 1 : 2);
    Partition Cc = Partition::from_labels(lc);
    double sum_sq = 0.25 + 0.09 + 0.04;
    for (int j = 0; j < 3; ++j) {
        double pj = Cc.sizes()[j] / 10.0;
        CHECK(expected_change(c, pic, Cc, j) ==
              doctest::Approx(pj * (1 + pj - sum_sq)).epsilon(1e-13));
    }
}

TEST_CASE("section 2 inequality checker") {
    CHECK(check_section2(new_odd_cycle(3), 100, 1).total_violations() == 0);
    CHECK(check_section2(new_complete_with_loops(20), 100, 2).total_violations() == 0);
    CHECK(check_section2(new_random_regular(50, 4, 5), 100, 3).total_violations() == 0);

    // falsification probe: claiming lambda = 0 on K3 must break the mixing bound
    InequalityReport broken = check_section2(new_odd_cycle(3), 100, 4, 0.0);
    CHECK(broken.total_violations() > 0);

    // report serialization carries every inequality
    InequalityReport rep = check_section2(new_odd_cycle(5), 10, 9);
    std::string json = rep.to_json();
    CHECK(json.find("S(A)-upper-proof") != std::string::npos);
    CHECK(json.find("S(A)-upper-statement") != std::string::npos);
    CHECK(json.find("\"violations\": 0") != std::string::npos);
}
