#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plurality/graph.hpp"
#include "plurality/vertex_set.hpp"

namespace plurality {

// Stationary distribution pi(x) = d(x) / sum of degrees. For loop-free
// graphs the denominator is 2m. Rejects disconnected graphs.
std::vector<double> stationary(const Graph& g);

struct EigenOptions {
    double tol = 1e-10;
    int dense_limit = 2000;       // dense solve up to this vertex count
    long max_iterations = 2000000;
};

// Absolute second eigenvalue lambda = max{|lambda_2|, |lambda_n|} of the
// walk's transition matrix P, computed on the similarity-symmetrized
// matrix D^{1/2} P D^{-1/2}. Rejects disconnected and bipartite graphs.
double second_eigenvalue(const Graph& g, const EigenOptions& opts = {});
double second_eigenvalue_dense(const Graph& g);
// Power iteration on the squared symmetrized operator with the top
// eigenvector deflated (the all-ones direction for regular graphs).
double second_eigenvalue_iterative(const Graph& g, const EigenOptions& opts = {});

struct SpectralProfile {
    std::vector<double> pi;
    double lambda = 0.0;
    std::string method;    // "dense" or "iterative"
    double residual = 0.0;
};
SpectralProfile spectral_profile(const Graph& g, const EigenOptions& opts = {});

// Flow function Q(A,B) = sum_{x in A} pi(x) P(x,B).
double flow_Q(const Graph& g, const std::vector<double>& pi,
              const VertexSet& A, const VertexSet& B);
// Same for the two-step walk: sum_{x in A} pi(x) P^2(x,B), by two-hop
// traversal (P^2 is never materialized).
double flow_Q2(const Graph& g, const std::vector<double>& pi,
               const VertexSet& A, const VertexSet& B);
// R(A,B) = sum_{x in A} pi(x) (P(x,B))^2.
double drift_R(const Graph& g, const std::vector<double>& pi,
               const VertexSet& A, const VertexSet& B);
// S_C(A) = sum_i R(A, A_i) over the classes of the partition.
double drift_S(const Graph& g, const std::vector<double>& pi,
               const Partition& partition, const VertexSet& A);

// pi(A_j) + R(V, A_j) - S_C(A_j): exact expected post-round measure of
// class j under one synchronous two-sample round.
double expected_change(const Graph& g, const std::vector<double>& pi,
                       const Partition& partition, int j);

double pi_of(const std::vector<double>& pi, const VertexSet& A);

struct InequalityRecord {
    std::string name;
    int instances = 0;
    int violations = 0;
    double min_slack = 0.0;   // slack = rhs - lhs for "lhs <= rhs"
    double lhs_at_min = 0.0;
    double rhs_at_min = 0.0;
    std::uint64_t seed_at_min = 0;
    double tolerance = 0.0;
};

struct InequalityReport {
    double lambda = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<InequalityRecord> records;

    int total_violations() const;
    std::string to_json(int indent = 2) const;
};

// Draws `samples` random subset pairs (A, B) and random partitions, then
// evaluates both sides of every inequality of the mixing lemma and the
// flow/drift bounds (including both published forms of the S_C(A) upper
// bound). Slack below -1e-9 counts as a violation; the two-step identity
// R(V,A) = Q_2(A,A) is held to 1e-12.
InequalityReport check_section2(const Graph& g, int samples, std::uint64_t seed,
                                std::optional<double> lambda_override = std::nullopt);

inline constexpr double kInequalityTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;

}  // namespace plurality
