#include "ubet/uamm.hpp"

#include <cmath>

namespace ubet {

PoolState PoolState::empty(std::size_t outcomes) {
    PoolState p;
    p.reserves.outcome.assign(outcomes, Amount{});
    return p;
}

Reserves<long double> PoolState::real() const {
    Reserves<long double> r;
    r.collateral = reserves.collateral.to_real();
    r.outcome.reserve(reserves.outcome.size());
    for (Amount a : reserves.outcome) r.outcome.push_back(a.to_real());
    return r;
}

void PoolState::snapshot_into(std::map<std::string, std::string>& f) const {
    f["pool.collateral"] = reserves.collateral.str();
    for (std::size_t k = 0; k < reserves.outcome.size(); ++k) {
        f["pool.outcome." + std::to_string(k + 1)] = reserves.outcome[k].str();
    }
    f["pool.total_supply"] = total_supply.str();
    f["pool.target_balance"] = target_balance.str();
    f["pool.fee_accrued"] = fee_accrued.str();
    f["pool.treasury_shares"] = treasury_shares.str();
}

SwapOutcome uamm_swap(long double d_in, long double reserve_out, long double target_balance,
                      long double fair_in, long double fair_out) {
    if (d_in < 0) throw Error(Errc::invalid_argument, "negative swap input");
    const long double rho = fair_in / fair_out;
    const long double delta = rho * d_in;
    const long double r = reserve_out;
    const long double tb = target_balance;

    if (r - delta <= tb && tb <= r) {
        if (d_in == 0 || r == 0) return {0, SwapRegime::boundary};
        const long double x = tb * tb / r;
        const long double alpha = r / (x + delta);
        return {alpha * delta + (rho - alpha) * (r - tb), SwapRegime::boundary};
    }
    if (tb <= r) return {delta, SwapRegime::surplus};
    if (d_in == 0 || r <= 0) return {0, SwapRegime::deficit};
    const long double x = tb * tb / r;
    return {r * delta / (x + delta), SwapRegime::deficit};
}

long double total_value(const PoolState& pool, const FairPrices& fair) {
    long double tv = pool.reserves.collateral.to_real();
    for (std::size_t k = 0; k < pool.outcomes(); ++k) tv += fair[k] * pool.reserves.outcome[k].to_real();
    return tv;
}

namespace {

void check_inputs(const PoolState& pool, const FairPrices& fair, std::size_t outcome) {
    if (fair.size() != pool.outcomes()) throw Error(Errc::invalid_argument, "fair price count mismatch");
    if (outcome >= pool.outcomes()) {
        throw Error(Errc::unknown_outcome, "outcome " + std::to_string(outcome + 1));
    }
}

template <typename Num>
auto uamm_swap_fn(const PoolState& pool, const FairPrices& fair) {
    const long double tb = pool.target_balance.to_real();
    return [tb, &fair](const Reserves<Num>& r, std::size_t in, std::size_t out, long double d_in) {
        return uamm_swap(d_in, detail::to_real(r.outcome[out]), tb, fair[in], fair[out]).amount;
    };
}

}  // namespace

Quote uamm_quote(const PoolState& pool, const FairPrices& fair, std::size_t outcome, long double wager,
                 Amount fee_rate) {
    check_inputs(pool, fair, outcome);
    if (wager < 0) throw Error(Errc::invalid_argument, "negative wager");
    Quote q;
    q.outcome = outcome;
    q.wager = wager;
    q.fee = Amount::floor(wager * fee_rate.to_real());
    q.post = pool.real();
    if (wager == 0) return q;
    try {
        q.odd = run_buy_pipeline(q.post, outcome, wager, uamm_swap_fn<long double>(pool, fair));
    } catch (const Error& e) {
        if (e.code() != Errc::unfillable) throw;
        q.fillable = false;
        q.odd = 0;
        q.post = pool.real();
        return q;
    }
    q.implied_price = wager / q.odd;
    q.slippage = q.implied_price - fair[outcome];
    return q;
}

long double uamm_spot_price(const PoolState& pool, const FairPrices& fair, std::size_t outcome) {
    return uamm_quote(pool, fair, outcome, kSpotEpsilon).implied_price;
}

BuyResult uamm_buy(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
                   std::size_t outcome, Amount wager) {
    check_inputs(pool, fair, outcome);
    if (wager.is_negative()) throw Error(Errc::invalid_argument, "negative wager");
    if (ledger.phase() != Phase::open) throw Error(Errc::market_not_open, "buy");
    if (wager.is_zero()) return {};

    const Amount fee = mul(wager, ledger.spec().fee_rate);
    if (ledger.balance(account, TokenId::collateral()) < wager + fee) {
        throw Error(Errc::insufficient_funds, account + " cannot cover " + (wager + fee).str());
    }

    Reserves<Amount> next = pool.reserves;
    const Amount odd = run_buy_pipeline(next, outcome, wager, uamm_swap_fn<Amount>(pool, fair));

    // Commit. The pool minted its collateral plus the bettor's wager into
    // sets and merged `next.collateral` of them back.
    ledger.debit(account, TokenId::collateral(), wager + fee);
    ledger.lock(pool.reserves.collateral + wager);
    ledger.release(next.collateral);
    ledger.credit(account, TokenId::outcome(outcome), odd);
    pool.reserves = std::move(next);
    pool.fee_accrued += fee;

    Shares minted;
    const long double tv = total_value(pool, fair);
    if (!pool.total_supply.is_zero() && tv > 0) {
        minted = Shares::nearest(wager.to_real() * pool.total_supply.to_real() / tv);
        pool.total_supply += minted;
        pool.treasury_shares += minted;
    }
    return {odd, fee, minted};
}

Shares add_liquidity(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
                     Amount d) {
    if (fair.size() != pool.outcomes()) throw Error(Errc::invalid_argument, "fair price count mismatch");
    if (d <= Amount{}) throw Error(Errc::invalid_argument, "liquidity must be positive");
    if (ledger.phase() != Phase::open) throw Error(Errc::market_not_open, "add liquidity");
    if (ledger.balance(account, TokenId::collateral()) < d) {
        throw Error(Errc::insufficient_funds, account + " cannot add " + d.str());
    }
    Shares s;
    if (pool.total_supply.is_zero()) {
        s = Shares::from_raw(static_cast<__int128>(d.raw()) * (Shares::scale() / Amount::scale()));
    } else {
        const long double tv = total_value(pool, fair);
        if (!(tv > 0)) throw Error(Errc::invalid_argument, "pool has shares but no value");
        s = Shares::nearest(d.to_real() * pool.total_supply.to_real() / tv);
    }
    ledger.debit(account, TokenId::collateral(), d);
    ledger.credit_shares(account, s);
    pool.reserves.collateral += d;
    pool.target_balance += d;
    pool.total_supply += s;
    return s;
}

Amount remove_liquidity(Ledger& ledger, PoolState& pool, const AccountId& account, Shares s) {
    if (s <= Shares{}) throw Error(Errc::invalid_argument, "share amount must be positive");
    if (ledger.shares(account) < s) throw Error(Errc::insufficient_funds, account + " lacks shares");
    const long double frac = s.to_real() / pool.total_supply.to_real();
    const Amount paid =
        s == pool.total_supply ? pool.reserves.collateral : Amount::nearest(pool.reserves.collateral.to_real() * frac);
    const Amount tb_cut =
        s == pool.total_supply ? pool.target_balance : Amount::nearest(pool.target_balance.to_real() * frac);
    ledger.debit_shares(account, s);
    ledger.credit(account, TokenId::collateral(), paid);
    pool.reserves.collateral -= paid;
    pool.target_balance -= tb_cut;
    pool.total_supply -= s;
    return paid;
}

}  // namespace ubet
