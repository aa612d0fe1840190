#include "plurality/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace plurality {

namespace {

void parallel_for(int total, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, total));
    if (workers == 1) {
        for (int i = 0; i < total; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t trial_seed(std::uint64_t master, int trial, std::uint64_t salt = 0) {
    return mix_u64(mix_u64(master, static_cast<std::uint64_t>(trial)), salt);
}

// Proportional rescale of class sizes to a new total, largest remainders
// first; preserves the non-increasing order of the input.
std::vector<std::int64_t> scale_sizes(const std::vector<std::int64_t>& sizes, int n) {
    std::int64_t total = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    std::vector<std::int64_t> out(sizes.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double exact = static_cast<double>(sizes[i]) * n / total;
        out[i] = static_cast<std::int64_t>(exact);
        assigned += out[i];
        rem.push_back({exact - out[i], i});
    }
    std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; assigned < n; ++j, ++assigned) ++out[rem[j % rem.size()].second];
    return out;
}

GraphDescriptor descriptor_with_n(GraphDescriptor desc, int n) {
    using F = GraphDescriptor::Family;
    switch (desc.family) {
        case F::complete_with_loops:
        case F::random_regular:
            desc.n = n;
            break;
        case F::odd_cycle:
            desc.n = (n % 2 == 0) ? n + 1 : n;
            break;
        case F::torus_grid:
        case F::file:
            throw std::invalid_argument("size sweep unsupported for this graph family");
    }
    return desc;
}

nlohmann::json sizes_json(const std::vector<std::int64_t>& v) {
    return nlohmann::json(v);
}

int plurality_class(const std::vector<std::int64_t>& sizes) {
    return static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

}  // namespace

std::string campaign_name(Campaign c) {
    switch (c) {
        case Campaign::win_probability: return "win-probability";
        case Campaign::consensus_time: return "consensus-time";
        case Campaign::one_step_drift: return "one-step-drift";
        case Campaign::endgame_contraction: return "endgame-contraction";
        case Campaign::coupling_3v2: return "coupling-3v2";
        case Campaign::ell_sweep: return "ell-sweep";
    }
    return {};
}

Campaign campaign_from_name(const std::string& name) {
    for (Campaign c : {Campaign::win_probability, Campaign::consensus_time,
                       Campaign::one_step_drift, Campaign::endgame_contraction,
                       Campaign::coupling_3v2, Campaign::ell_sweep}) {
        if (campaign_name(c) == name) return c;
    }
    throw std::invalid_argument("unknown campaign: " + name);
}

nlohmann::json ExperimentSpec::to_json() const {
    return {
        {"graph", graph.describe()},
        {"sizes", sizes_json(sizes)},
        {"placement", placement_name(placement)},
        {"rule", rule_name(protocol.rule)},
        {"walk_length", protocol.walk_length},
        {"campaign", campaign_name(campaign)},
        {"trials", trials},
        {"max_rounds", max_rounds},
        {"seed", seed},
    };
}

HypothesisBlock theorem1_hypotheses(int n, const std::vector<std::int64_t>& sizes,
                                    double lambda) {
    HypothesisBlock h;
    h.lambda = lambda;
    std::vector<std::int64_t> sorted = sizes;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    h.a1 = sorted[0];
    h.a2 = sorted.size() > 1 ? sorted[1] : 0;
    h.gap = h.a1 - h.a2;
    h.a1_at_most_two_thirds = 3 * h.a1 <= 2 * static_cast<std::int64_t>(n);
    h.gap_required = kGapConstant * n * std::sqrt(std::log(static_cast<double>(n)) / h.a1);
    h.gap_ok = static_cast<double>(h.gap) >= h.gap_required;
    h.lambda_max_allowed = kLambdaGapFraction * h.gap / n;
    h.lambda_ok = lambda <= h.lambda_max_allowed;
    return h;
}

nlohmann::json HypothesisBlock::to_json() const {
    return {
        {"lambda", lambda},
        {"a1", a1},
        {"a2", a2},
        {"gap", gap},
        {"a1_at_most_two_thirds", a1_at_most_two_thirds},
        {"gap_required", gap_required},
        {"gap_ok", gap_ok},
        {"lambda_max_allowed", lambda_max_allowed},
        {"lambda_ok", lambda_ok},
        {"all_met", all_met()},
    };
}

// ---------------------------------------------------------------------------
// win probability

double WinProbabilityReport::win_frequency(int cls) const {
    return spec.trials > 0 ? static_cast<double>(wins[cls]) / spec.trials : 0.0;
}

WinProbabilityReport run_win_probability(const ExperimentSpec& spec) {
    WinProbabilityReport rep;
    rep.spec = spec;
    Graph g = spec.graph.build();
    rep.hypotheses = theorem1_hypotheses(g.vertex_count(), spec.sizes,
                                         second_eigenvalue(g));
    rep.trials.resize(spec.trials);
    parallel_for(spec.trials, spec.workers, [&](int t) {
        std::uint64_t pseed = trial_seed(spec.seed, t);
        std::uint64_t rseed = trial_seed(spec.seed, t, 0x72756eu);
        OpinionConfig initial = place_opinions(g, spec.sizes, spec.placement, pseed);
        RunTrace trace = run(g, initial, spec.protocol, spec.max_rounds, rseed);
        rep.trials[t] = {t, rseed, trace.winner, trace.rounds_used};
    });
    rep.wins.assign(spec.sizes.size(), 0);
    for (const auto& r : rep.trials) {
        if (r.winner >= 0) {
            ++rep.wins[r.winner];
        } else {
            ++rep.timeouts;
        }
    }
    for (std::size_t j = 0; j < rep.wins.size(); ++j) {
        rep.intervals.push_back(wilson_interval(rep.wins[j], spec.trials));
    }
    return rep;
}

nlohmann::json WinProbabilityReport::to_json() const {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t j = 0; j < wins.size(); ++j) {
        classes.push_back({{"class", j},
                           {"wins", wins[j]},
                           {"frequency", win_frequency(static_cast<int>(j))},
                           {"wilson_low", intervals[j].low},
                           {"wilson_high", intervals[j].high}});
    }
    nlohmann::json per_trial = nlohmann::json::array();
    for (const auto& t : trials) {
        per_trial.push_back({{"trial", t.trial}, {"seed", t.seed}, {"winner", t.winner},
                             {"rounds", t.rounds}});
    }
    return {{"spec", spec.to_json()},
            {"hypotheses", hypotheses.to_json()},
            {"classes", classes},
            {"timeouts", timeouts},
            {"trials", per_trial}};
}

std::string WinProbabilityReport::to_csv() const {
    std::ostringstream os;
    os << "class,wins,frequency,wilson_low,wilson_high\n";
    for (std::size_t j = 0; j < wins.size(); ++j) {
        os << j << ',' << wins[j] << ',' << win_frequency(static_cast<int>(j)) << ','
           << intervals[j].low << ',' << intervals[j].high << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// consensus time

ConsensusTimeReport run_consensus_time(const ExperimentSpec& spec) {
    ConsensusTimeReport rep;
    rep.spec = spec;
    std::vector<int> sweep = spec.sweep_n;
    if (sweep.empty()) {
        sweep.push_back(static_cast<int>(
            std::accumulate(spec.sizes.begin(), spec.sizes.end(), std::int64_t{0})));
    }
    bool first = true;
    for (int n : sweep) {
        GraphDescriptor desc = descriptor_with_n(spec.graph, n);
        Graph g = desc.build();
        std::vector<std::int64_t> sizes = scale_sizes(spec.sizes, g.vertex_count());
        if (first) {
            rep.hypotheses =
                theorem1_hypotheses(g.vertex_count(), sizes, second_eigenvalue(g));
            first = false;
        }
        std::vector<double> rounds(spec.trials, 0.0);
        std::atomic<int> timeouts{0};
        parallel_for(spec.trials, spec.workers, [&](int t) {
            OpinionConfig initial =
                place_opinions(g, sizes, spec.placement, trial_seed(spec.seed, t));
            RunTrace trace = run(g, initial, spec.protocol, spec.max_rounds,
                                 trial_seed(spec.seed, t, 0x72756eu));
            rounds[t] = trace.rounds_used;
            if (trace.outcome == Outcome::timeout) timeouts.fetch_add(1);
        });
        ConsensusTimePoint pt;
        pt.n = g.vertex_count();
        pt.sizes = sizes;
        pt.median_rounds = quantile(rounds, 0.5);
        pt.q10 = quantile(rounds, 0.1);
        pt.q90 = quantile(rounds, 0.9);
        std::int64_t a1 = *std::max_element(sizes.begin(), sizes.end());
        std::vector<std::int64_t> sorted = sizes;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        std::int64_t gap = sorted[0] - (sorted.size() > 1 ? sorted[1] : 0);
        pt.theory_scale = (static_cast<double>(pt.n) / a1) *
                              std::log(static_cast<double>(a1) / std::max<std::int64_t>(gap, 1)) +
                          std::log(static_cast<double>(pt.n));
        pt.timeouts = timeouts.load();
        rep.points.push_back(std::move(pt));
    }
    if (rep.points.size() >= 2) {
        std::vector<double> logn, theory, med;
        for (const auto& p : rep.points) {
            logn.push_back(std::log(static_cast<double>(p.n)));
            theory.push_back(p.theory_scale);
            med.push_back(p.median_rounds);
        }
        rep.log_fit = least_squares(logn, med);
        rep.theory_fit = least_squares(theory, med);
        rep.medians_monotone = std::is_sorted(med.begin(), med.end());
    }
    return rep;
}

nlohmann::json ConsensusTimeReport::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"n", p.n}, {"sizes", sizes_json(p.sizes)},
                       {"median_rounds", p.median_rounds}, {"q10", p.q10}, {"q90", p.q90},
                       {"theory_scale", p.theory_scale}, {"timeouts", p.timeouts}});
    }
    return {{"spec", spec.to_json()},
            {"hypotheses", hypotheses.to_json()},
            {"points", pts},
            {"log_fit", {{"intercept", log_fit.intercept}, {"slope", log_fit.slope}}},
            {"theory_fit",
             {{"intercept", theory_fit.intercept}, {"slope", theory_fit.slope}}},
            {"medians_monotone", medians_monotone}};
}

std::string ConsensusTimeReport::to_csv() const {
    std::ostringstream os;
    os << "n,median_rounds,q10,q90,theory_scale,timeouts\n";
    for (const auto& p : points) {
        os << p.n << ',' << p.median_rounds << ',' << p.q10 << ',' << p.q90 << ','
           << p.theory_scale << ',' << p.timeouts << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// one-step drift

DriftReport run_one_step_drift(const ExperimentSpec& spec) {
    DriftReport rep;
    rep.spec = spec;
    rep.trials = spec.trials;
    Graph g = spec.graph.build();
    const int n = g.vertex_count();
    rep.hypotheses = theorem1_hypotheses(n, spec.sizes, second_eigenvalue(g));

    OpinionConfig initial = place_opinions(g, spec.sizes, spec.placement, spec.seed);
    const int j1 = plurality_class(spec.sizes);
    const double a1 = static_cast<double>(rep.hypotheses.a1);
    const double gap = static_cast<double>(rep.hypotheses.gap);
    rep.growth_bound = a1 * (1.0 + gap / (5.0 * n));
    rep.gap_bound = gap * (1.0 + a1 / (10.0 * n));
    rep.mean_bound = a1 * (1.0 + gap / n / 4.0);

    std::vector<double> a1p(spec.trials), min_gap(spec.trials);
    parallel_for(spec.trials, spec.workers, [&](int t) {
        OpinionConfig after = step(g, initial, spec.protocol, trial_seed(spec.seed, t));
        double best = static_cast<double>(after.sizes[j1]);
        double worst_gap = 1e300;
        for (int j = 0; j < after.k(); ++j) {
            if (j == j1) continue;
            worst_gap = std::min(worst_gap, best - static_cast<double>(after.sizes[j]));
        }
        a1p[t] = best;
        min_gap[t] = worst_gap;
    });
    for (int t = 0; t < spec.trials; ++t) {
        if (a1p[t] >= rep.growth_bound) ++rep.growth_holds;
        if (min_gap[t] >= rep.gap_bound) ++rep.gap_holds;
    }
    rep.a1_prime = mean_std_err(a1p);
    rep.min_gap = mean_std_err(min_gap);
    return rep;
}

nlohmann::json DriftReport::to_json() const {
    return {{"spec", spec.to_json()},
            {"hypotheses", hypotheses.to_json()},
            {"trials", trials},
            {"growth_bound", growth_bound},
            {"growth_holds", growth_holds},
            {"gap_bound", gap_bound},
            {"gap_holds", gap_holds},
            {"mean_bound", mean_bound},
            {"a1_prime_mean", a1_prime.mean},
            {"a1_prime_se", a1_prime.std_err},
            {"min_gap_mean", min_gap.mean},
            {"min_gap_se", min_gap.std_err}};
}

std::string DriftReport::to_csv() const {
    std::ostringstream os;
    os << "trials,growth_bound,growth_holds,gap_bound,gap_holds,mean_bound,"
          "a1_prime_mean,a1_prime_se,min_gap_mean,min_gap_se\n";
    os << trials << ',' << growth_bound << ',' << growth_holds << ',' << gap_bound << ','
       << gap_holds << ',' << mean_bound << ',' << a1_prime.mean << ',' << a1_prime.std_err
       << ',' << min_gap.mean << ',' << min_gap.std_err << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// endgame contraction

ContractionReport run_endgame_contraction(const ExperimentSpec& spec) {
    ContractionReport rep;
    rep.spec = spec;
    Graph g = spec.graph.build();
    const int n = g.vertex_count();
    rep.lambda = second_eigenvalue(g);
    rep.lambda_ok = rep.lambda <= kEndgameLambdaMax;
    rep.round_bound = static_cast<int>(
        std::ceil(4.0 / std::log(8.0 / 7.0) * std::log(static_cast<double>(n))));

    const int majority = plurality_class(spec.sizes);
    // Per-trial minority-mass history; B = everything outside the majority class.
    std::vector<std::vector<double>> minority(spec.trials);
    std::atomic<int> timeouts{0};
    parallel_for(spec.trials, spec.workers, [&](int t) {
        OpinionConfig initial =
            place_opinions(g, spec.sizes, spec.placement, trial_seed(spec.seed, t));
        RunTrace trace = run(g, initial, spec.protocol, spec.max_rounds,
                             trial_seed(spec.seed, t, 0x72756eu));
        if (trace.outcome == Outcome::timeout) timeouts.fetch_add(1);
        for (const auto& sizes : trace.size_history) {
            minority[t].push_back(
                static_cast<double>(n - sizes[majority]) / static_cast<double>(n));
        }
    });
    rep.timeouts = timeouts.load();
    for (int t = 0; t < spec.trials; ++t) {
        rep.max_rounds_used =
            std::max(rep.max_rounds_used, static_cast<int>(minority[t].size()) - 1);
    }
    rep.worst_ratio_vs_bound = -1e300;
    for (int r = 0; r + 1 <= rep.max_rounds_used; ++r) {
        std::vector<double> ratios;
        for (int t = 0; t < spec.trials; ++t) {
            if (r + 1 < static_cast<int>(minority[t].size()) && minority[t][r] > 0.0) {
                ratios.push_back(minority[t][r + 1] / minority[t][r]);
            }
        }
        if (ratios.empty()) break;
        ContractionRound row;
        row.round = r;
        row.live_trials = static_cast<int>(ratios.size());
        row.ratio = mean_std_err(ratios);
        if (row.live_trials >= 10) {
            rep.worst_ratio_vs_bound =
                std::max(rep.worst_ratio_vs_bound,
                         row.ratio.mean - (kContractionRatio + 3.0 * row.ratio.std_err));
        }
        rep.rounds.push_back(row);
    }
    return rep;
}

nlohmann::json ContractionReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rounds) {
        rows.push_back({{"round", r.round}, {"live_trials", r.live_trials},
                        {"mean_ratio", r.ratio.mean}, {"se", r.ratio.std_err}});
    }
    return {{"spec", spec.to_json()},
            {"lambda", lambda},
            {"lambda_ok", lambda_ok},
            {"contraction_bound", kContractionRatio},
            {"rounds", rows},
            {"max_rounds_used", max_rounds_used},
            {"round_bound", round_bound},
            {"timeouts", timeouts},
            {"worst_ratio_vs_bound", worst_ratio_vs_bound}};
}

std::string ContractionReport::to_csv() const {
    std::ostringstream os;
    os << "round,live_trials,mean_ratio,se\n";
    for (const auto& r : rounds) {
        os << r.round << ',' << r.live_trials << ',' << r.ratio.mean << ','
           << r.ratio.std_err << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// three-sample coupling

CouplingReport run_coupling_3v2(const ExperimentSpec& spec) {
    CouplingReport rep;
    rep.spec = spec;
    Graph g = spec.graph.build();
    const int n = g.vertex_count();
    rep.lambda = second_eigenvalue(g);
    const std::vector<double> pi = stationary(g);

    OpinionConfig initial = place_opinions(g, spec.sizes, spec.placement, spec.seed);
    Partition C = Partition::from_labels(initial.opinion);
    const int j = spec.drift_class;
    if (j < 0 || j >= C.k()) throw std::invalid_argument("drift class out of range");

    std::vector<double> class_pi(C.k(), 0.0);
    for (int v = 0; v < n; ++v) class_pi[C.label(v)] += pi[v];
    double sum_sq = 0.0, sum_32 = 0.0;
    for (double p : class_pi) {
        sum_sq += p * p;
        sum_32 += p * std::sqrt(p);
    }

    // First-sample layer: one round of classical pull voting; A_j' is the
    // set of vertices whose single sample held opinion j.
    rep.layer_trials = spec.trials;
    ProtocolSpec one{Rule::one_sample, spec.protocol.walk_length, false};
    std::vector<double> sA(spec.trials), sAc(spec.trials), sB(spec.trials);
    const bool two_class = (C.k() == 2);
    parallel_for(spec.trials, spec.workers, [&](int t) {
        OpinionConfig layer = step(g, initial, one, trial_seed(spec.seed, t, 0x6c617965u));
        VertexSet aj = layer.class_set(j);
        sA[t] = drift_S(g, pi, C, aj);
        sAc[t] = drift_S(g, pi, C, aj.complement());
        if (two_class) {
            VertexSet b = layer.class_set(1);
            sB[t] = drift_S(g, pi, C, b);
        }
    });

    auto make_bound = [](std::string name, std::vector<double>& xs, double bound) {
        CouplingBound cb;
        cb.name = std::move(name);
        cb.estimate = mean_std_err(xs);
        cb.bound = bound;
        cb.ok = cb.estimate.mean >= bound - 3.0 * cb.estimate.std_err;
        return cb;
    };
    double pj = class_pi[j], pjc = 1.0 - pj;
    rep.s_of_layer = make_bound(
        "E[S_C(A_j')] lower", sA, pj * sum_sq - 2.0 * rep.lambda * std::sqrt(pj) * sum_32);
    rep.s_of_layer_complement =
        make_bound("E[S_C(A_j'^c)] lower", sAc,
                   pjc * sum_sq - 2.0 * rep.lambda * std::sqrt(pjc) * sum_32);
    if (two_class) {
        rep.s_two_class = make_bound("E[S_C(B')] >= pi(B)/4", sB, class_pi[1] / 4.0);
    }

    // Matched-seed two- vs three-sample campaigns: per-trial placements are
    // identical, only the sampling rule differs.
    rep.vote_trials = spec.trials;
    rep.wins_two.assign(C.k(), 0);
    rep.wins_three.assign(C.k(), 0);
    std::vector<int> w2(spec.trials, -1), w3(spec.trials, -1);
    parallel_for(spec.trials, spec.workers, [&](int t) {
        std::uint64_t pseed = trial_seed(spec.seed, t);
        std::uint64_t rseed = trial_seed(spec.seed, t, 0x72756eu);
        OpinionConfig start = place_opinions(g, spec.sizes, spec.placement, pseed);
        ProtocolSpec two{Rule::two_sample, spec.protocol.walk_length, false};
        ProtocolSpec three{Rule::three_sample, spec.protocol.walk_length,
                           spec.protocol.tie_keep_own};
        w2[t] = run(g, start, two, spec.max_rounds, rseed).winner;
        w3[t] = run(g, start, three, spec.max_rounds, rseed).winner;
    });
    for (int t = 0; t < spec.trials; ++t) {
        if (w2[t] >= 0) ++rep.wins_two[w2[t]]; else ++rep.timeouts_two;
        if (w3[t] >= 0) ++rep.wins_three[w3[t]]; else ++rep.timeouts_three;
    }
    return rep;
}

namespace {
nlohmann::json bound_json(const CouplingBound& b) {
    return {{"name", b.name}, {"mean", b.estimate.mean}, {"se", b.estimate.std_err},
            {"bound", b.bound}, {"ok", b.ok}};
}
}  // namespace

nlohmann::json CouplingReport::to_json() const {
    nlohmann::json out = {{"spec", spec.to_json()},
                          {"lambda", lambda},
                          {"layer_trials", layer_trials},
                          {"s_of_layer", bound_json(s_of_layer)},
                          {"s_of_layer_complement", bound_json(s_of_layer_complement)},
                          {"vote_trials", vote_trials},
                          {"wins_two", sizes_json(wins_two)},
                          {"wins_three", sizes_json(wins_three)},
                          {"timeouts_two", timeouts_two},
                          {"timeouts_three", timeouts_three}};
    if (s_two_class) out["s_two_class"] = bound_json(*s_two_class);
    return out;
}

std::string CouplingReport::to_csv() const {
    std::ostringstream os;
    os << "class,wins_two,wins_three\n";
    for (std::size_t c = 0; c < wins_two.size(); ++c) {
        os << c << ',' << wins_two[c] << ',' << wins_three[c] << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// ell sweep

EllSweepReport run_ell_sweep(const ExperimentSpec& spec) {
    EllSweepReport rep;
    rep.spec = spec;
    Graph g = spec.graph.build();
    const int n = g.vertex_count();
    rep.lambda = second_eigenvalue(g);
    std::vector<int> ells = spec.ell_values;
    if (ells.empty()) ells = {1, 2, 4, 8};
    const int j1 = plurality_class(spec.sizes);

    std::vector<std::int64_t> sorted = spec.sizes;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double a1 = static_cast<double>(sorted[0]);
    double gap = a1 - static_cast<double>(sorted.size() > 1 ? sorted[1] : 0);
    double sqrt_term = std::sqrt(std::log(static_cast<double>(n)) / a1);

    for (int ell : ells) {
        EllPoint pt;
        pt.ell = ell;
        pt.lambda_pow = std::pow(rep.lambda, ell);
        pt.gap_ok_literal =
            gap >= kGapConstant * n * std::max(sqrt_term, pt.lambda_pow);
        pt.gap_ok_relaxed = gap >= n * std::max(sqrt_term, pt.lambda_pow);
        std::vector<int> winners(spec.trials, -1);
        ProtocolSpec proto = spec.protocol;
        proto.walk_length = ell;
        parallel_for(spec.trials, spec.workers, [&](int t) {
            // Matched seeds: identical placement and run seed per trial index.
            OpinionConfig start =
                place_opinions(g, spec.sizes, spec.placement, trial_seed(spec.seed, t));
            winners[t] =
                run(g, start, proto, spec.max_rounds, trial_seed(spec.seed, t, 0x72756eu))
                    .winner;
        });
        for (int w : winners) {
            if (w == j1) ++pt.plurality_wins;
            if (w < 0) ++pt.timeouts;
        }
        pt.win_frequency = static_cast<double>(pt.plurality_wins) / spec.trials;
        rep.points.push_back(pt);
    }
    return rep;
}

nlohmann::json EllSweepReport::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"ell", p.ell}, {"lambda_pow", p.lambda_pow},
                       {"gap_ok_literal", p.gap_ok_literal},
                       {"gap_ok_relaxed", p.gap_ok_relaxed},
                       {"plurality_wins", p.plurality_wins}, {"timeouts", p.timeouts},
                       {"win_frequency", p.win_frequency}});
    }
    return {{"spec", spec.to_json()}, {"lambda", lambda}, {"points", pts}};
}

std::string EllSweepReport::to_csv() const {
    std::ostringstream os;
    os << "ell,lambda_pow,gap_ok_literal,gap_ok_relaxed,plurality_wins,timeouts,"
          "win_frequency\n";
    for (const auto& p : points) {
        os << p.ell << ',' << p.lambda_pow << ',' << p.gap_ok_literal << ','
           << p.gap_ok_relaxed << ',' << p.plurality_wins << ',' << p.timeouts << ','
           << p.win_frequency << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

CampaignOutput run_campaign(const ExperimentSpec& spec) {
    CampaignOutput out;
    std::ostringstream head;
    switch (spec.campaign) {
        case Campaign::win_probability: {
            auto rep = run_win_probability(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            int j1 = plurality_class(spec.sizes);
            head << "win-probability: class " << j1 << " won "
                 << rep.win_frequency(j1) * 100 << "% of " << spec.trials << " trials ("
                 << rep.timeouts << " timeouts)";
            break;
        }
        case Campaign::consensus_time: {
            auto rep = run_consensus_time(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            head << "consensus-time: " << rep.points.size() << " point(s), log-fit slope "
                 << rep.log_fit.slope;
            break;
        }
        case Campaign::one_step_drift: {
            auto rep = run_one_step_drift(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            head << "one-step-drift: growth bound held in " << rep.growth_holds << "/"
                 << rep.trials << " rounds (hypotheses "
                 << (rep.hypotheses.all_met() ? "met" : "NOT met") << ")";
            break;
        }
        case Campaign::endgame_contraction: {
            auto rep = run_endgame_contraction(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            head << "endgame-contraction: max rounds " << rep.max_rounds_used << " (bound "
                 << rep.round_bound << "), worst ratio-vs-bound " << rep.worst_ratio_vs_bound;
            break;
        }
        case Campaign::coupling_3v2: {
            auto rep = run_coupling_3v2(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            head << "coupling-3v2: E[S_C(A_j')] = " << rep.s_of_layer.estimate.mean
                 << " vs bound " << rep.s_of_layer.bound
                 << (rep.s_of_layer.ok ? " (ok)" : " (VIOLATED)");
            break;
        }
        case Campaign::ell_sweep: {
            auto rep = run_ell_sweep(spec);
            out.json = rep.to_json();
            out.csv = rep.to_csv();
            head << "ell-sweep: lambda = " << rep.lambda << ", " << rep.points.size()
                 << " walk lengths";
            break;
        }
    }
    out.json["campaign"] = campaign_name(spec.campaign);
    out.headline = head.str();
    return out;
}

}  // namespace plurality
