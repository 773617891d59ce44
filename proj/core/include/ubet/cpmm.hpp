#pragma once

#include <cstddef>

#include "ubet/fair_prices.hpp"
#include "ubet/ledger.hpp"
#include "ubet/pool.hpp"
#include "ubet/uamm.hpp"

namespace ubet {

/// Constant-product reserves for one token pair.
struct CpmmPair {
    long double x = 0;  // input reserve
    long double y = 0;  // output reserve

    long double invariant() const { return x * y; }
};

/// dOut = y − x·y/(x + d_in); the pair is updated in place.
long double cpmm_swap(long double d_in, CpmmPair& pair);

/// Seeds a constant-product pool so its implied prices match `fair`: the
/// per-outcome claims are funding / (K·fτk), which values the pool at
/// `funding` under the fair prices. The account pays for the largest claim
/// and keeps the conditional tokens the pool does not need.
void cpmm_seed(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
               Amount funding);

/// Same quotation contract as `uamm_quote`, priced purely by reserves.
/// `fair` only supplies the slippage reference.
Quote cpmm_quote(const PoolState& pool, const FairPrices& fair, std::size_t outcome, long double wager,
                 Amount fee_rate = Amount{});

long double cpmm_spot_price(const PoolState& pool, const FairPrices& fair, std::size_t outcome);

/// Buy pipeline with constant-product swaps. No shares are minted.
BuyResult cpmm_buy(Ledger& ledger, PoolState& pool, const AccountId& account, std::size_t outcome,
                   Amount wager);

}  // namespace ubet
