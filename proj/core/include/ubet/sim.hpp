#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ubet/market.hpp"
#include "ubet/metrics.hpp"
#include "ubet/sim_config.hpp"

namespace ubet {

/// Parameters of one simulated market after sampling any distributions.
struct MarketParams {
    std::size_t outcomes = 2;
    std::vector<long double> probs;
    std::size_t n_bets = 0;
};

MarketParams sample_market_params(const SimConfig& config, std::uint64_t market_index);

/// Log-normal wager in dollars, rounded to the cent, at least one cent.
Amount draw_wager(std::mt19937_64& rng, double mu, double sigma);
std::size_t draw_side(std::mt19937_64& rng, SideMode mode, const FairPrices& fair);
/// Rejection threshold ~ N(mean, std); std = 0 gives a fixed threshold.
long double draw_threshold(std::mt19937_64& rng, double mean, double std);

enum class Decision { accept, reject };

/// Rejects when the quote's slippage exceeds the threshold, or when the
/// pool cannot fill the wager at all.
Decision decide_rejection(const Quote& quote, long double threshold);
Decision decide_rejection(const Quote& quote, std::mt19937_64& rng, double mean, double std);

struct BettorDraw {
    Amount wager;
    std::size_t side = 0;
    long double threshold = 0;
};

/// One bettor: wager, then side, then threshold, always all three so the
/// stream stays aligned whatever the engine decides.
BettorDraw draw_bettor(std::mt19937_64& rng, const SimConfig& config, const FairPrices& fair);

struct RunOptions {
    bool record_path = true;       // per-step pool balances
    bool record_bets = true;       // BetRecord per attempted bet
    bool check_invariants = true;  // conservation after every bet
};

/// Trajectory and settlement of one market.
struct MarketRun {
    std::uint64_t index = 0;
    std::string market_id;
    MarketOutcome outcome;  // fair prices, initial/final per-outcome claims, sampled winner
    std::size_t n_bets = 0;
    std::size_t accepted = 0;
    std::size_t unfillable = 0;
    Amount volume;
    Amount fees;
    long double tv_initial = 0;
    long double tv_final = 0;
    long double ev_final = 0;
    long double overround_sum = 0;
    /// Pool collateral after the pool redeemed its winning tokens.
    Amount pool_settled;
    PoolState final_pool;
    std::vector<BetRecord> bets;
    std::vector<long double> path;  // (n_bets + 1) x K claims, row-major
    std::vector<long double> ev_path;
    std::vector<long double> eip_path;
    std::vector<std::size_t> rejection_path;  // cumulative rejections

    std::size_t outcomes() const { return outcome.fair.size(); }
};

MarketRun run_market(const SimConfig& config, std::uint64_t market_index, const MarketParams& params,
                     const RunOptions& options = {});

/// Market 0 of the configuration under `seed`.
MarketRun run_single_market(const SimConfig& config, std::uint64_t seed, const RunOptions& options = {});

MetricsReport summarize(std::span<const MarketRun> markets);

struct MultiRun {
    std::vector<MarketRun> markets;
    MetricsReport report;
};

/// `config.n_markets` independent markets, simulated in parallel and
/// reduced in index order.
MultiRun run_multi_market(const SimConfig& config, const RunOptions& options = {false, true, true});

struct TrialSummary {
    std::size_t bets = 0;  // accepted
    std::size_t attempted = 0;
    Amount volume;
    Amount fees;
    long double epp = 0;          // mean over the trial's markets
    long double tp = 0;           // M·EPP
    long double tp_plus_fee = 0;  // TP + fee revenue
    long double funding_total = 0;
};

struct FullRun {
    std::vector<TrialSummary> trials;
    std::vector<MarketRun> markets;  // trial-major
    MeanStd bets;
    MeanStd volume;
    MeanStd epp;
    MeanStd tp;
    MeanStd fees;
    MeanStd tp_plus_fee;
    long double funding_total = 0;  // per trial
    MetricsReport report;           // over every market of every trial
};

/// Uncontrolled experiment: `trials` repetitions of `config.n_markets`
/// markets whose outcome counts, probabilities and bet counts are drawn
/// per market.
FullRun run_full_market(const SimConfig& config, std::size_t trials, const RunOptions& options = {false, true, true});

struct ProbSweepRow {
    long double prob = 0;
    SideMode side_mode = SideMode::true_prob;
    MetricsReport report;
    std::vector<long double> mean_final;  // mean per-outcome claim at close
};

/// Outcome 1 gets probability p; the rest share 1 − p equally.
SimConfig prob_sweep_config(const SimConfig& base, long double p, SideMode mode);
std::vector<ProbSweepRow> sweep_probabilities(const SimConfig& base, std::span<const long double> probs,
                                              std::span<const SideMode> modes);

struct RejectionSweepRow {
    long double threshold = 0;
    MetricsReport report;
};

/// Fixed rejection thresholds (rej_std = 0), bettor streams shared across rows.
SimConfig rejection_sweep_config(const SimConfig& base, long double threshold);
std::vector<RejectionSweepRow> sweep_rejection(const SimConfig& base, std::span<const long double> thresholds);

}  // namespace ubet
