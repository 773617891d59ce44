#include "ubet/market.hpp"

namespace ubet {

const char* to_string(EngineKind e) noexcept { return e == EngineKind::uamm ? "uamm" : "cpmm"; }

EngineKind parse_engine(std::string_view text) {
    if (text == "uamm") return EngineKind::uamm;
    if (text == "cpmm") return EngineKind::cpmm;
    throw Error(Errc::invalid_argument, "unknown engine '" + std::string(text) + "'");
}

Market::Market(MarketSpec spec, FairPrices fair, EngineKind engine)
    : ledger_(std::move(spec)), pool_(PoolState::empty(ledger_.outcomes())), fair_(std::move(fair)), engine_(engine) {
    if (fair_.size() != ledger_.outcomes()) throw Error(Errc::invalid_argument, "fair price count mismatch");
}

void Market::set_fair(FairPrices fair) {
    if (fair.size() != ledger_.outcomes()) throw Error(Errc::invalid_argument, "fair price count mismatch");
    fair_ = std::move(fair);
}

Shares Market::fund(const AccountId& account, Amount d) {
    if (engine_ == EngineKind::uamm) return add_liquidity(account, d);
    cpmm_seed(ledger_, pool_, fair_, account, d);
    return pool_.total_supply;
}

Shares Market::add_liquidity(const AccountId& account, Amount d) {
    if (engine_ != EngineKind::uamm) throw Error(Errc::invalid_argument, "cpmm pools are seeded once");
    return ubet::add_liquidity(ledger_, pool_, fair_, account, d);
}

Amount Market::remove_liquidity(const AccountId& account, Shares s) {
    if (engine_ != EngineKind::uamm) throw Error(Errc::invalid_argument, "cpmm pools do not support removal");
    return ubet::remove_liquidity(ledger_, pool_, account, s);
}

Quote Market::quote(std::size_t outcome, long double wager) const {
    const Amount rate = ledger_.spec().fee_rate;
    return engine_ == EngineKind::uamm ? uamm_quote(pool_, fair_, outcome, wager, rate)
                                       : cpmm_quote(pool_, fair_, outcome, wager, rate);
}

long double Market::spot_price(std::size_t outcome) const {
    return engine_ == EngineKind::uamm ? uamm_spot_price(pool_, fair_, outcome)
                                       : cpmm_spot_price(pool_, fair_, outcome);
}

long double Market::overround() const {
    long double sum = 0;
    for (std::size_t k = 0; k < ledger_.outcomes(); ++k) sum += spot_price(k);
    return sum - 1;
}

BuyResult Market::buy(const AccountId& account, std::size_t outcome, Amount wager) {
    return engine_ == EngineKind::uamm ? uamm_buy(ledger_, pool_, fair_, account, outcome, wager)
                                       : cpmm_buy(ledger_, pool_, account, outcome, wager);
}

Amount Market::redeem_pool() {
    if (ledger_.phase() != Phase::resolved) throw Error(Errc::market_not_resolved, "pool redemption");
    const std::size_t w = *ledger_.winner();
    const Amount paid = pool_.reserves.outcome[w];
    ledger_.release(paid);
    pool_.reserves.collateral += paid;
    for (Amount& a : pool_.reserves.outcome) a = Amount{};
    return paid;
}

bool Market::conserved() const {
    const Amount locked = ledger_.locked();
    if (ledger_.phase() == Phase::resolved) {
        const std::size_t w = *ledger_.winner();
        return ledger_.outcome_supply(w) + pool_.reserves.outcome[w] == locked;
    }
    for (std::size_t k = 0; k < ledger_.outcomes(); ++k) {
        if (ledger_.outcome_supply(k) + pool_.reserves.outcome[k] != locked) return false;
    }
    return ledger_.total_account_shares() + pool_.treasury_shares == pool_.total_supply;
}

std::map<std::string, std::string> Market::snapshot_fields() const {
    auto fields = ledger_.snapshot_fields();
    pool_.snapshot_into(fields);
    fields["market.engine"] = to_string(engine_);
    fields["market.fair"] = fair_.str();
    return fields;
}

std::string Market::snapshot() const { return render_snapshot(snapshot_fields()); }

}  // namespace ubet
