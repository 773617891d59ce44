#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ubet/amount.hpp"
#include "ubet/market.hpp"

namespace ubet {

enum class SideMode { true_prob, uniform };

const char* to_string(SideMode m) noexcept;

/// Outcome count: a fixed K or a uniform draw from [lo, hi]. Text: "2", "2-3".
struct OutcomeCountSpec {
    std::size_t lo = 2;
    std::size_t hi = 2;

    bool fixed() const noexcept { return lo == hi; }
    std::string str() const;
};

/// Fixed probability vector ("0.5,0.5"), or per-outcome uniform draws that
/// are then normalized ("uniform(0.2,0.8)").
struct ProbSpec {
    std::vector<long double> fixed{0.5L, 0.5L};
    bool uniform = false;
    long double lo = 0.2L;
    long double hi = 0.8L;

    std::string str() const;
};

/// Fixed bet count ("1000") or a log-normal draw in log-space parameters,
/// rounded and clamped ("lognormal(2,2)" clamps to [1, 40];
/// "lognormal(2,2,1,40)" sets the bounds explicitly).
struct BetCountSpec {
    std::size_t fixed = 1000;
    bool lognormal = false;
    double mu = 2.0;
    double sigma = 2.0;
    std::size_t lo = 1;
    std::size_t hi = 40;

    std::string str() const;
};

/// Experiment hyperparameters. The config file is flat `key = value` text
/// with exactly these keys: k, funding, probs, n_bets, n_markets, wager_mu,
/// wager_sigma, side_mode, rej_mean, rej_std, fee_rate, seed, engine.
struct SimConfig {
    OutcomeCountSpec k;
    Amount funding = Amount::from_units(10'000);
    ProbSpec probs;
    BetCountSpec n_bets;
    std::size_t n_markets = 100;
    double wager_mu = 3.2;
    double wager_sigma = 1.2;
    SideMode side_mode = SideMode::true_prob;
    double rej_mean = 0.045;
    double rej_std = 0.05;
    Amount fee_rate = Amount::from_raw(25'000);
    std::uint64_t seed = 42;
    EngineKind engine = EngineKind::uamm;

    /// Uncontrolled-experiment defaults: K in {2, 3}, probabilities drawn
    /// from (0.2, 0.8), bet counts from lognormal(2, 2) clamped to [1, 40].
    static SimConfig full_defaults();

    /// Overlays `key = value` lines onto `base`. Unknown keys are reported
    /// together, by name.
    static SimConfig parse(std::string_view text, SimConfig base);
    static SimConfig parse(std::string_view text);
    static SimConfig load(const std::string& path, SimConfig base);
    static SimConfig load(const std::string& path);

    void set(std::string_view key, std::string_view value);
    void validate() const;
    /// Canonical text form, one key per line in documented order.
    std::string render() const;
};

extern const std::vector<std::string> kConfigKeys;

}  // namespace ubet
