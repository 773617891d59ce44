#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "ubet/cpmm.hpp"
#include "ubet/fair_prices.hpp"
#include "ubet/ledger.hpp"
#include "ubet/pool.hpp"
#include "ubet/uamm.hpp"

namespace ubet {

enum class EngineKind { uamm, cpmm };

const char* to_string(EngineKind e) noexcept;
EngineKind parse_engine(std::string_view text);

/// Executed form of a quote.
struct BetRecord {
    std::size_t step = 0;
    std::size_t outcome = 0;
    Amount wager;
    Amount fee;
    Amount odd;
    long double fair_price = 0;
    long double implied_price = 0;
    long double slippage = 0;
    long double threshold = 0;
    long double overround = 0;  // Σ spot prices − 1 before the bet
    bool accepted = false;
};

/// One betting market: ledger, pool and fair-price reference behind a
/// single writer. Engine choice only changes the swap curve.
class Market {
public:
    Market(MarketSpec spec, FairPrices fair, EngineKind engine);

    const Ledger& ledger() const noexcept { return ledger_; }
    Ledger& ledger() noexcept { return ledger_; }
    const PoolState& pool() const noexcept { return pool_; }
    const FairPrices& fair() const noexcept { return fair_; }
    EngineKind engine() const noexcept { return engine_; }
    void set_fair(FairPrices fair);

    /// UAMM: add_liquidity. CPMM: seeds the pool, once.
    Shares fund(const AccountId& account, Amount d);
    Shares add_liquidity(const AccountId& account, Amount d);
    Amount remove_liquidity(const AccountId& account, Shares s);

    Quote quote(std::size_t outcome, long double wager) const;
    long double spot_price(std::size_t outcome) const;
    /// Σ spot prices − 1.
    long double overround() const;
    BuyResult buy(const AccountId& account, std::size_t outcome, Amount wager);

    void close_betting() { ledger_.close_betting(); }
    void resolve(const AccountId& caller, std::size_t winner) { ledger_.resolve(caller, winner); }
    Amount redeem(const AccountId& account) { return ledger_.redeem(account); }
    /// Converts the pool's winning tokens to collateral and burns the rest.
    Amount redeem_pool();

    /// Uniform-set conservation before resolution, winning-supply
    /// conservation after it. Exact comparison.
    bool conserved() const;
    /// Sorted key=value fields behind `snapshot()`.
    std::map<std::string, std::string> snapshot_fields() const;
    std::string snapshot() const;

private:
    Ledger ledger_;
    PoolState pool_;
    FairPrices fair_;
    EngineKind engine_;
};

}  // namespace ubet
