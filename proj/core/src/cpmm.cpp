#include "ubet/cpmm.hpp"

#include <algorithm>

namespace ubet {

long double cpmm_swap(long double d_in, CpmmPair& pair) {
    if (d_in < 0) throw Error(Errc::invalid_argument, "negative swap input");
    if (d_in == 0 || pair.y <= 0) return 0;
    const long double out = pair.y * d_in / (pair.x + d_in);
    pair.x += d_in;
    pair.y -= out;
    return out;
}

namespace {

// Inside the pipeline the input pool already includes the wager.
template <typename Num>
long double pipeline_swap(const Reserves<Num>& r, std::size_t in, std::size_t out, long double d_in) {
    CpmmPair pair{detail::to_real(r.outcome[in]) - d_in, detail::to_real(r.outcome[out])};
    return cpmm_swap(d_in, pair);
}

void check_inputs(const PoolState& pool, std::size_t outcome) {
    if (outcome >= pool.outcomes()) {
        throw Error(Errc::unknown_outcome, "outcome " + std::to_string(outcome + 1));
    }
}

}  // namespace

void cpmm_seed(Ledger& ledger, PoolState& pool, const FairPrices& fair, const AccountId& account,
               Amount funding) {
    const std::size_t k = pool.outcomes();
    if (fair.size() != k) throw Error(Errc::invalid_argument, "fair price count mismatch");
    if (funding <= Amount{}) throw Error(Errc::invalid_argument, "funding must be positive");
    if (!pool.total_supply.is_zero()) throw Error(Errc::invalid_argument, "pool already seeded");

    std::vector<Amount> claim(k);
    for (std::size_t i = 0; i < k; ++i) {
        claim[i] = Amount::floor(funding.to_real() / (static_cast<long double>(k) * fair[i]));
    }
    const Amount lo = *std::min_element(claim.begin(), claim.end());
    const Amount hi = *std::max_element(claim.begin(), claim.end());
    if (ledger.balance(account, TokenId::collateral()) < hi) {
        throw Error(Errc::insufficient_funds, account + " cannot seed " + hi.str());
    }
    // Pay `lo` straight into the collateral pool, mint `hi - lo` sets, and
    // hand the pool its share of each outcome token.
    ledger.debit(account, TokenId::collateral(), lo);
    ledger.mint(account, hi - lo);
    pool.reserves.collateral = lo;
    for (std::size_t i = 0; i < k; ++i) {
        const Amount extra = claim[i] - lo;
        ledger.debit(account, TokenId::outcome(i), extra);
        pool.reserves.outcome[i] = extra;
    }
    const Shares s = Shares::from_raw(static_cast<__int128>(funding.raw()) * (Shares::scale() / Amount::scale()));
    ledger.credit_shares(account, s);
    pool.total_supply = s;
    pool.target_balance = funding;
}

Quote cpmm_quote(const PoolState& pool, const FairPrices& fair, std::size_t outcome, long double wager,
                 Amount fee_rate) {
    check_inputs(pool, outcome);
    if (wager < 0) throw Error(Errc::invalid_argument, "negative wager");
    Quote q;
    q.outcome = outcome;
    q.wager = wager;
    q.fee = Amount::floor(wager * fee_rate.to_real());
    q.post = pool.real();
    if (wager == 0) return q;
    try {
        q.odd = run_buy_pipeline(q.post, outcome, wager, pipeline_swap<long double>);
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

long double cpmm_spot_price(const PoolState& pool, const FairPrices& fair, std::size_t outcome) {
    return cpmm_quote(pool, fair, outcome, kSpotEpsilon).implied_price;
}

BuyResult cpmm_buy(Ledger& ledger, PoolState& pool, const AccountId& account, std::size_t outcome,
                   Amount wager) {
    check_inputs(pool, outcome);
    if (wager.is_negative()) throw Error(Errc::invalid_argument, "negative wager");
    if (ledger.phase() != Phase::open) throw Error(Errc::market_not_open, "buy");
    if (wager.is_zero()) return {};

    const Amount fee = mul(wager, ledger.spec().fee_rate);
    if (ledger.balance(account, TokenId::collateral()) < wager + fee) {
        throw Error(Errc::insufficient_funds, account + " cannot cover " + (wager + fee).str());
    }
    Reserves<Amount> next = pool.reserves;
    const Amount odd = run_buy_pipeline(next, outcome, wager, pipeline_swap<Amount>);

    ledger.debit(account, TokenId::collateral(), wager + fee);
    ledger.lock(pool.reserves.collateral + wager);
    ledger.release(next.collateral);
    ledger.credit(account, TokenId::outcome(outcome), odd);
    pool.reserves = std::move(next);
    pool.fee_accrued += fee;
    return {odd, fee, Shares{}};
}

}  // namespace ubet
