#include "plurality/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "plurality/rng.hpp"

namespace plurality {

std::vector<double> stationary(const Graph& g) {
    ValidationReport rep = validate(g);
    if (!rep.connected) throw std::invalid_argument("stationary: graph is disconnected");
    std::vector<double> pi(g.vertex_count());
    const double total = static_cast<double>(g.degree_sum());
    for (int v = 0; v < g.vertex_count(); ++v) {
        pi[v] = g.degree(v) / total;
    }
    return pi;
}

namespace {

void require_spectral_input(const Graph& g) {
    ValidationReport rep = validate(g);
    if (!rep.connected) throw std::invalid_argument("eigensolve: graph is disconnected");
    if (rep.bipartite) throw std::invalid_argument("eigensolve: graph is bipartite (lambda = 1)");
}

// y = S x with S = D^{-1/2} A D^{-1/2}; S shares P's spectrum.
void apply_symmetrized(const Graph& g, const std::vector<double>& inv_sqrt_deg,
                       const std::vector<double>& x, std::vector<double>& y) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u : g.neighbors(v)) acc += x[u] * inv_sqrt_deg[u];
        y[v] = acc * inv_sqrt_deg[v];
    }
}

}  // namespace

double second_eigenvalue_dense(const Graph& g) {
    require_spectral_input(g);
    const int n = g.vertex_count();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> inv_sqrt_deg(n);
    for (int v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    for (int v = 0; v < n; ++v) {
        for (int u : g.neighbors(v)) {
            s(v, u) += inv_sqrt_deg[v] * inv_sqrt_deg[u];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");
    const auto& ev = solver.eigenvalues();  // ascending; ev(n-1) = 1
    if (n == 1) return 0.0;
    return std::max(std::abs(ev(0)), std::abs(ev(n - 2)));
}

double second_eigenvalue_iterative(const Graph& g, const EigenOptions& opts) {
    require_spectral_input(g);
    const int n = g.vertex_count();
    if (n == 1) return 0.0;
    std::vector<double> inv_sqrt_deg(n), top(n);
    for (int v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    // Top eigenvector of S is D^{1/2} 1 (the all-ones vector for regular graphs).
    {
        double norm = 0.0;
        for (int v = 0; v < n; ++v) {
            top[v] = std::sqrt(static_cast<double>(g.degree(v)));
            norm += top[v] * top[v];
        }
        norm = std::sqrt(norm);
        for (double& t : top) t /= norm;
    }
    auto deflate_normalize = [&](std::vector<double>& x) -> double {
        // Project out `top` twice: one pass leaves a rounding residual that
        // can itself be parallel to `top` (catastrophic for lambda ~ 0).
        for (int pass = 0; pass < 2; ++pass) {
            double dot = 0.0;
            for (int v = 0; v < n; ++v) dot += x[v] * top[v];
            for (int v = 0; v < n; ++v) x[v] -= dot * top[v];
        }
        double norm = 0.0;
        for (int v = 0; v < n; ++v) norm += x[v] * x[v];
        norm = std::sqrt(norm);
        if (norm > 0) {
            for (double& e : x) e /= norm;
        }
        return norm;
    };

    RngStream rng(0x5eedu, static_cast<std::uint64_t>(n));
    std::vector<double> x(n), y(n), z(n);
    for (double& e : x) e = rng.next_double() - 0.5;
    deflate_normalize(x);

    // Power iteration on S^2: converges to lambda^2 regardless of the sign
    // of the extreme eigenvalue.
    const double rho_tol = std::min(opts.tol * opts.tol, opts.tol * 1e-2);
    double rho_prev = -1.0;
    for (long it = 0; it < opts.max_iterations; ++it) {
        apply_symmetrized(g, inv_sqrt_deg, x, y);
        apply_symmetrized(g, inv_sqrt_deg, y, x);
        // The deflated norm estimates lambda^2; below ~1e-12 it is pure
        // rounding residue of the projection (scale eps * sqrt(n)), and
        // renormalizing it would hand the iteration back to eigenvalue 1.
        double norm = deflate_normalize(x);
        if (norm < 1e-12) return 0.0;
        apply_symmetrized(g, inv_sqrt_deg, x, y);
        apply_symmetrized(g, inv_sqrt_deg, y, z);
        double rho = 0.0;
        for (int v = 0; v < n; ++v) rho += x[v] * z[v];
        if (rho_prev >= 0.0 && std::abs(rho - rho_prev) < rho_tol && it > 16) {
            return std::sqrt(std::max(rho, 0.0));
        }
        rho_prev = rho;
    }
    throw std::runtime_error("power iteration did not converge within the iteration cap");
}

double second_eigenvalue(const Graph& g, const EigenOptions& opts) {
    if (g.vertex_count() <= opts.dense_limit) return second_eigenvalue_dense(g);
    return second_eigenvalue_iterative(g, opts);
}

SpectralProfile spectral_profile(const Graph& g, const EigenOptions& opts) {
    SpectralProfile prof;
    prof.pi = stationary(g);
    if (g.vertex_count() <= opts.dense_limit) {
        prof.lambda = second_eigenvalue_dense(g);
        prof.method = "dense";
        prof.residual = 0.0;
    } else {
        prof.lambda = second_eigenvalue_iterative(g, opts);
        prof.method = "iterative";
        prof.residual = opts.tol;
    }
    return prof;
}

double pi_of(const std::vector<double>& pi, const VertexSet& A) {
    double acc = 0.0;
    for (int v = 0; v < A.universe(); ++v) {
        if (A.contains(v)) acc += pi[v];
    }
    return acc;
}

double flow_Q(const Graph& g, const std::vector<double>& pi,
              const VertexSet& A, const VertexSet& B) {
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (!A.contains(x)) continue;
        int hits = 0;
        for (int u : g.neighbors(x)) hits += B.contains(u);
        acc += pi[x] * hits / g.degree(x);
    }
    return acc;
}

double flow_Q2(const Graph& g, const std::vector<double>& pi,
               const VertexSet& A, const VertexSet& B) {
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (!A.contains(x)) continue;
        double p2 = 0.0;
        for (int z : g.neighbors(x)) {
            int hits = 0;
            for (int u : g.neighbors(z)) hits += B.contains(u);
            p2 += static_cast<double>(hits) / g.degree(z);
        }
        acc += pi[x] * p2 / g.degree(x);
    }
    return acc;
}

double drift_R(const Graph& g, const std::vector<double>& pi,
               const VertexSet& A, const VertexSet& B) {
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (!A.contains(x)) continue;
        int hits = 0;
        for (int u : g.neighbors(x)) hits += B.contains(u);
        double p = static_cast<double>(hits) / g.degree(x);
        acc += pi[x] * p * p;
    }
    return acc;
}

double drift_S(const Graph& g, const std::vector<double>& pi,
               const Partition& partition, const VertexSet& A) {
    std::vector<int> hist(partition.k(), 0);
    std::vector<int> touched;
    touched.reserve(partition.k());
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (!A.contains(x)) continue;
        for (int u : g.neighbors(x)) {
            int c = partition.label(u);
            if (hist[c]++ == 0) touched.push_back(c);
        }
        const double d = g.degree(x);
        double sum = 0.0;
        for (int c : touched) {
            double p = hist[c] / d;
            sum += p * p;
            hist[c] = 0;
        }
        touched.clear();
        acc += pi[x] * sum;
    }
    return acc;
}

double expected_change(const Graph& g, const std::vector<double>& pi,
                       const Partition& partition, int j) {
    if (j < 0 || j >= partition.k()) throw std::out_of_range("class index");
    VertexSet aj = partition.class_set(j);
    double pa = pi_of(pi, aj);
    return pa + drift_R(g, pi, VertexSet::full(g.vertex_count()), aj) -
           drift_S(g, pi, partition, aj);
}

int InequalityReport::total_violations() const {
    int acc = 0;
    for (const auto& r : records) acc += r.violations;
    return acc;
}

std::string InequalityReport::to_json(int indent) const {
    std::ostringstream os;
    os.precision(17);
    std::string pad(indent, ' ');
    os << "{\n";
    os << pad << "\"lambda\": " << lambda << ",\n";
    os << pad << "\"samples\": " << samples << ",\n";
    os << pad << "\"seed\": " << seed << ",\n";
    os << pad << "\"violations\": " << total_violations() << ",\n";
    os << pad << "\"inequalities\": [\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << pad << pad << "{\"name\": \"" << r.name << "\", \"instances\": " << r.instances
           << ", \"violations\": " << r.violations << ", \"min_slack\": " << r.min_slack
           << ", \"lhs\": " << r.lhs_at_min << ", \"rhs\": " << r.rhs_at_min
           << ", \"instance_seed\": " << r.seed_at_min << ", \"tolerance\": " << r.tolerance
           << "}" << (i + 1 < records.size() ? "," : "") << "\n";
    }
    os << pad << "]\n}";
    return os.str();
}

namespace {

class InequalityCollector {
public:
    explicit InequalityCollector(InequalityReport& report) : report_(report) {}

    // Records "lhs <= rhs" under the given name; slack = rhs - lhs.
    void check(const std::string& name, double lhs, double rhs, std::uint64_t seed,
               double tolerance) {
        InequalityRecord* rec = nullptr;
        for (auto& r : report_.records) {
            if (r.name == name) {
                rec = &r;
                break;
            }
        }
        if (!rec) {
            report_.records.push_back({name, 0, 0, 1e300, 0.0, 0.0, 0, tolerance});
            rec = &report_.records.back();
        }
        double slack = rhs - lhs;
        ++rec->instances;
        if (slack < -tolerance) ++rec->violations;
        if (slack < rec->min_slack) {
            rec->min_slack = slack;
            rec->lhs_at_min = lhs;
            rec->rhs_at_min = rhs;
            rec->seed_at_min = seed;
        }
    }

private:
    InequalityReport& report_;
};

VertexSet random_subset(int n, RngStream& rng) {
    // Inclusion probability drawn from {0.1, ..., 0.9} per sample, covering
    // balanced and skewed regimes.
    double p = 0.1 * (1 + rng.next_below(9));
    VertexSet s(n);
    for (int v = 0; v < n; ++v) {
        if (rng.next_double() < p) s.insert(v);
    }
    return s;
}

Partition random_partition(int n, RngStream& rng) {
    int k = 2 + static_cast<int>(rng.next_below(5));
    // Dirichlet-like class weights via exponentials.
    std::vector<double> cum(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        total += -std::log(1.0 - rng.next_double());
        cum[i] = total;
    }
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) {
        double u = rng.next_double() * total;
        int c = 0;
        while (c + 1 < k && u > cum[c]) ++c;
        labels[v] = c;
    }
    // Compact away classes that happened to receive no vertex.
    std::vector<int> remap(k, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (remap[labels[v]] < 0) remap[labels[v]] = next++;
        labels[v] = remap[labels[v]];
    }
    return Partition::from_labels(std::move(labels));
}

}  // namespace

InequalityReport check_section2(const Graph& g, int samples, std::uint64_t seed,
                                std::optional<double> lambda_override) {
    const int n = g.vertex_count();
    const std::vector<double> pi = stationary(g);
    const double lambda = lambda_override ? *lambda_override : second_eigenvalue(g);
    InequalityReport report;
    report.lambda = lambda;
    report.samples = samples;
    report.seed = seed;
    InequalityCollector out(report);
    const VertexSet V = VertexSet::full(n);
    const double l2 = lambda * lambda;

    for (int s = 0; s < samples; ++s) {
        std::uint64_t iseed = mix_u64(seed, static_cast<std::uint64_t>(s));
        RngStream rng(iseed);
        VertexSet A = random_subset(n, rng);
        VertexSet B = random_subset(n, rng);
        Partition C = random_partition(n, rng);
        VertexSet Ac = A.complement();
        VertexSet Bc = B.complement();
        double pa = pi_of(pi, A), pb = pi_of(pi, B);
        double pac = 1.0 - pa, pbc = 1.0 - pb;

        double qAAc = flow_Q(g, pi, A, Ac);
        double qAB = flow_Q(g, pi, A, B);
        double qBA = flow_Q(g, pi, B, A);
        double q2AA = flow_Q2(g, pi, A, A);
        double q2AAc = flow_Q2(g, pi, A, Ac);
        double rVA = drift_R(g, pi, V, A);
        double rAB = drift_R(g, pi, A, B);

        // Reversibility: Q(A,B) = Q(B,A).
        out.check("reversibility", std::abs(qAB - qBA), 0.0, iseed, kIdentityTolerance);

        // Expander mixing lemma, one-set and two-set forms.
        out.check("mixing-one-set", std::abs(qAAc - pa * pac), lambda * pa * pac, iseed,
                  kInequalityTolerance);
        out.check("mixing-two-set", std::abs(qAB - pa * pb),
                  lambda * std::sqrt(pa * pb * pac * pbc), iseed, kInequalityTolerance);

        // Q(A,B)^2 lower bound.
        out.check("Q-squared-lower",
                  std::pow(pa * pb, 2.0) -
                      2.0 * lambda * std::pow(pa * pb, 1.5) * std::sqrt(pac * pbc),
                  qAB * qAB, iseed, kInequalityTolerance);

        // Two-step identity R(V,A) = Q_2(A,A).
        out.check("R(V,A)=Q2(A,A)", std::abs(rVA - q2AA), 0.0, iseed, kIdentityTolerance);

        // Two-step mixing: |Q_2(A,A^c) - pi(A)pi(A^c)| <= lambda^2 pi(A)pi(A^c),
        // equivalently |R(V,A) - pi(A)^2| within the same bound.
        out.check("two-step-mixing", std::abs(q2AAc - pa * pac), l2 * pa * pac, iseed,
                  kInequalityTolerance);
        out.check("R(V,A)-piA2-bound", std::abs(rVA - pa * pa), l2 * pa * pac, iseed,
                  kInequalityTolerance);

        // R(A,B) >= Q(A,B)^2 / pi(A) >= spectral lower bound.
        double q2_over_pa = pa > 0.0 ? qAB * qAB / pa : 0.0;
        out.check("R-convexity", q2_over_pa, rAB, iseed, kInequalityTolerance);
        out.check("R-spectral-lower",
                  pa * pb * pb -
                      2.0 * lambda * std::sqrt(pa) * std::pow(pb, 1.5) * std::sqrt(pac * pbc),
                  rAB, iseed, kInequalityTolerance);

        // Partition bounds on S_C.
        double sum_sq = 0.0, sum_32 = 0.0;
        std::vector<double> class_pi(C.k(), 0.0);
        for (int v = 0; v < n; ++v) class_pi[C.label(v)] += pi[v];
        for (double p : class_pi) {
            sum_sq += p * p;
            sum_32 += p * std::sqrt(p);
        }
        double sV = drift_S(g, pi, C, V);
        out.check("S(V)-deviation", std::abs(sV - sum_sq), l2 * (1.0 - sum_sq), iseed,
                  kInequalityTolerance);

        double sA = drift_S(g, pi, C, A);
        double cross = 2.0 * lambda * std::sqrt(pa * pac) * sum_32;
        out.check("S(A)-lower", pa * sum_sq - cross, sA, iseed, kInequalityTolerance);
        // Upper bound: proof form carries lambda^2 (1 - sum pi^2); the
        // statement's plain +lambda^2 is reported alongside (it is weaker).
        out.check("S(A)-upper-proof", sA, pa * sum_sq + cross + l2 * (1.0 - sum_sq), iseed,
                  kInequalityTolerance);
        out.check("S(A)-upper-statement", sA, pa * sum_sq + cross + l2, iseed,
                  kInequalityTolerance);
    }
    return report;
}

}  // namespace plurality
