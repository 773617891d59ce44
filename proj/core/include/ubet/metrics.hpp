#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ubet/amount.hpp"

namespace ubet {

/// Pool balances throughout the metrics are per-outcome claims: the
/// collateral pool plus that outcome's conditional pool, i.e. the balances
/// the buy pipeline swaps against.

/// EV(t) = Σk ( fk·Rk − (1 − fk)·(Z − Rk) ),  Z = Σk Rk.
long double expected_value(std::span<const long double> balances, std::span<const long double> fair);

/// Start and end of one market as the metrics see it.
struct MarketOutcome {
    std::vector<long double> fair;
    std::vector<long double> initial;
    std::vector<long double> final;
    std::size_t winner = 0;
};

/// Σk fk·(Rk,T − Rk,0) for one market.
long double impermanent_pnl(const MarketOutcome& m);
/// R_winner,T − R_winner,0 for one market.
long double permanent_pnl(const MarketOutcome& m);

struct MeanStd {
    long double mean = 0;
    long double std = 0;  // sample standard deviation, 0 for n < 2
    std::size_t n = 0;

    long double stderr_mean() const;
};

MeanStd mean_std(std::span<const long double> xs);

/// Expected impermanent PnL across markets.
MeanStd eip(std::span<const MarketOutcome> markets);
/// Expected permanent PnL across markets, each valued at its sampled winner.
MeanStd epp(std::span<const MarketOutcome> markets);
/// TP = M·EPP.
long double total_pnl(std::span<const MarketOutcome> markets);

/// Mean overround over quotes, where each entry is Σ spot prices − 1.
long double vigorish(std::span<const long double> overrounds);

struct MetricsReport {
    std::size_t markets = 0;
    std::size_t bets_attempted = 0;
    std::size_t bets_accepted = 0;
    Amount volume;
    Amount fees;
    long double rejection_rate = 0;
    MeanStd eip;
    MeanStd epp;
    long double tp = 0;
    MeanStd tv_pnl;          // TV_T − TV_0 per market, collateral pool included
    MeanStd ev_final;
    long double vigorish = 0;
    std::vector<long double> ev_series;  // mean EV across markets per step
};

}  // namespace ubet
