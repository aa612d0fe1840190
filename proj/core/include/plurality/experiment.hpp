#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plurality/graph.hpp"
#include "plurality/spectral.hpp"
#include "plurality/stats.hpp"
#include "plurality/voting.hpp"

namespace plurality {

enum class Campaign {
    win_probability,
    consensus_time,
    one_step_drift,
    endgame_contraction,
    coupling_3v2,
    ell_sweep,
};

std::string campaign_name(Campaign c);
Campaign campaign_from_name(const std::string& name);

// Named constants from the one-step drift and endgame lemmas.
inline constexpr double kGapConstant = 339.41125496954282;  // 240 * sqrt(2)
inline constexpr double kLambdaGapFraction = 1.0 / 32.0;
inline constexpr double kEndgameLambdaMax = 1.0 / 4.0;
inline constexpr double kContractionRatio = 7.0 / 8.0;

struct ExperimentSpec {
    GraphDescriptor graph;
    std::vector<std::int64_t> sizes;  // non-increasing by convention
    Placement placement = Placement::random;
    ProtocolSpec protocol;
    Campaign campaign = Campaign::win_probability;
    int trials = 100;
    int max_rounds = 1000;
    std::uint64_t seed = 1;
    std::vector<int> sweep_n;      // consensus-time: sweep at fixed proportions
    std::vector<int> ell_values;   // ell-sweep
    int drift_class = 0;           // class j observed by drift / coupling
    int workers = 1;

    nlohmann::json to_json() const;
};

// Whether the instance satisfies the one-step drift preconditions with the
// literal constants: A1 <= 2n/3, A1 - A2 >= C n sqrt(log n / A1) with
// C = 240*sqrt(2), and lambda <= (A1 - A2) / (32 n). Reported in every
// campaign so a reader can see whether the preconditions held.
struct HypothesisBlock {
    double lambda = 0.0;
    std::int64_t a1 = 0;
    std::int64_t a2 = 0;
    std::int64_t gap = 0;
    bool a1_at_most_two_thirds = false;
    double gap_required = 0.0;
    bool gap_ok = false;
    double lambda_max_allowed = 0.0;
    bool lambda_ok = false;

    bool all_met() const { return a1_at_most_two_thirds && gap_ok && lambda_ok; }
    nlohmann::json to_json() const;
};

HypothesisBlock theorem1_hypotheses(int n, const std::vector<std::int64_t>& sizes,
                                    double lambda);

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int winner = -1;  // -1 on timeout
    int rounds = 0;
};

struct WinProbabilityReport {
    ExperimentSpec spec;
    HypothesisBlock hypotheses;
    std::vector<TrialRecord> trials;
    std::vector<std::int64_t> wins;  // per class; timeouts are losses for everyone
    std::int64_t timeouts = 0;
    std::vector<WilsonInterval> intervals;

    double win_frequency(int cls) const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};
WinProbabilityReport run_win_probability(const ExperimentSpec& spec);

struct ConsensusTimePoint {
    int n = 0;
    std::vector<std::int64_t> sizes;
    double median_rounds = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    double theory_scale = 0.0;  // (n/A1) log(A1/(A1-A2)) + log n
    int timeouts = 0;
};

struct ConsensusTimeReport {
    ExperimentSpec spec;
    HypothesisBlock hypotheses;  // for the base instance
    std::vector<ConsensusTimePoint> points;
    LinearFit log_fit;     // median vs log n
    LinearFit theory_fit;  // median vs theory_scale
    bool medians_monotone = false;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};
ConsensusTimeReport run_consensus_time(const ExperimentSpec& spec);

struct DriftReport {
    ExperimentSpec spec;
    HypothesisBlock hypotheses;
    int trials = 0;
    double growth_bound = 0.0;   // A1 (1 + (A1-A2)/(5n))
    double gap_bound = 0.0;      // (A1-A2)(1 + A1/(10n))
    double mean_bound = 0.0;     // A1 (1 + Delta/4)
    std::int64_t growth_holds = 0;  // rounds with A1' >= growth_bound
    std::int64_t gap_holds = 0;     // rounds with min gap >= gap_bound
    MeanStdErr a1_prime;
    MeanStdErr min_gap;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};
DriftReport run_one_step_drift(const ExperimentSpec& spec);

struct ContractionRound {
    int round = 0;
    int live_trials = 0;  // trials with pi(B) > 0 entering this round
    MeanStdErr ratio;     // pi(B') / pi(B)
};

struct ContractionReport {
    ExperimentSpec spec;
    double lambda = 0.0;
    bool lambda_ok = false;  // lambda <= 1/4
    std::vector<ContractionRound> rounds;
    int max_rounds_used = 0;
    int timeouts = 0;
    int round_bound = 0;  // ceil((4 / ln(8/7)) ln n)
    double worst_ratio_vs_bound = 0.0;  // max over rounds of mean - (7/8 + 3 se)

    nlohmann::json to_json() const;
    std::string to_csv() const;
};
ContractionReport run_endgame_contraction(const ExperimentSpec& spec);

struct CouplingBound {
    std::string name;
    MeanStdErr estimate;
    double bound = 0.0;
    bool ok = false;  // mean >= bound - 3 se
};

struct CouplingReport {
    ExperimentSpec spec;
    double lambda = 0.0;
    int layer_trials = 0;
    CouplingBound s_of_layer;             // E S_C(A_j')
    CouplingBound s_of_layer_complement;  // E S_C(A_j'^c)
    std::optional<CouplingBound> s_two_class;  // E S_C(B') >= pi(B)/4, k = 2 only
    // Matched-seed two- vs three-sample campaigns (identical placements).
    int vote_trials = 0;
    std::vector<std::int64_t> wins_two;
    std::vector<std::int64_t> wins_three;
    int timeouts_two = 0;
    int timeouts_three = 0;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};
CouplingReport run_coupling_3v2(const ExperimentSpec& spec);

struct EllPoint {
    int ell = 0;
    double lambda_pow = 0.0;  // lambda^ell
    bool gap_ok_literal = false;  // A1-A2 >= C n max{sqrt(log n/A1), lambda^ell}
    bool gap_ok_relaxed = false;  // same with C = 1
    std::int64_t plurality_wins = 0;
    int timeouts = 0;
    double win_frequency = 0.0;
};

struct EllSweepReport {
    ExperimentSpec spec;
    double lambda = 0.0;
    std::vector<EllPoint> points;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};
EllSweepReport run_ell_sweep(const ExperimentSpec& spec);

// Dispatch on spec.campaign; headline is a one-line human summary.
struct CampaignOutput {
    nlohmann::json json;
    std::string csv;
    std::string headline;
};
CampaignOutput run_campaign(const ExperimentSpec& spec);

}  // namespace plurality
