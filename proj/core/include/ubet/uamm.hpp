#pragma once

#include <cstddef>

#include "ubet/fair_prices.hpp"
#include "ubet/ledger.hpp"
#include "ubet/pool.hpp"

namespace ubet {

enum class SwapRegime {
    boundary,  // TB lies between the output pool before and after a fair swap
    surplus,   // output pool stays above TB: fair exchange, no slippage
    deficit,   // output pool below TB: constant-product slippage
};

struct SwapOutcome {
    long double amount = 0;
    SwapRegime regime = SwapRegime::surplus;
};

/// UAMM swap of `d_in` input tokens for output tokens.
///
/// The fair amount is Δ = ρ·d_in with ρ = fair_in / fair_out. With
/// X = TB² / R_out, α = R_out / (X + Δ), branches are evaluated in order:
///   R_out − Δ ≤ TB ≤ R_out : α·Δ + (ρ − α)(R_out − TB)
///   TB ≤ R_out             : Δ
///   otherwise              : R_out − TB² / (X + Δ)
/// The deficit branch is computed as R_out·Δ / (X + Δ), which is the same
/// quantity without the cancellation.
SwapOutcome uamm_swap(long double d_in, long double reserve_out, long double target_balance,
                      long double fair_in, long double fair_out);

/// TV = Rτ0 + Σ fτk·Rτk.
long double total_value(const PoolState& pool, const FairPrices& fair);

/// Odds quotation for a wager. Quoting never touches the live pool.
struct Quote {
    std::size_t outcome = 0;
    long double wager = 0;
    Amount fee;
    long double odd = 0;             // payout in outcome tokens
    long double implied_price = 0;   // wager / odd; 0 for a zero wager
    long double slippage = 0;        // implied_price − fair price of the outcome
    bool fillable = true;
    Reserves<long double> post;

    long double decimal_odds() const { return wager > 0 ? odd / wager : 0; }
};

/// Odds calculation on a scratch copy of the pool. Unfillable wagers come
/// back with `fillable == false` and odd 0.
Quote uamm_quote(const PoolState& pool, const FairPrices& fair, std::size_t outcome,
                 long double wager, Amount fee_rate = Amount{});

/// Marginal implied probability: implied price of a 1e-4 collateral quote.
long double uamm_spot_price(const PoolState& pool, const FairPrices& fair, std::size_t outcome);

inline constexpr long double kSpotEpsilon = 1e-4L;

struct BuyResult {
    Amount odd;
    Amount fee;
    Shares minted;  // credited to the pool treasury
};

/// Executes a bet: the account pays wager + fee, receives `odd` outcome
/// tokens, and the pool sweeps its common conditional balance back into
/// collateral. Throws without mutating anything on failure.
BuyResult uamm_buy(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
                   std::size_t outcome, Amount wager);

/// Adds collateral liquidity. LP shares are d·TS/TV from the pre-add state,
/// or d itself when the pool has no shares yet.
Shares add_liquidity(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
                     Amount d);

/// Burns shares for Rτ0·s/TS collateral. TS and TB shrink in the same
/// proportion; conditional pools stay locked until resolution.
Amount remove_liquidity(Ledger& ledger, PoolState& pool, const AccountId& account, Shares s);

}  // namespace ubet
