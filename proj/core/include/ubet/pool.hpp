#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ubet/amount.hpp"
#include "ubet/error.hpp"

namespace ubet {

/// Collateral pool plus one conditional-token pool per outcome.
template <typename Num>
struct Reserves {
    Num collateral{};
    std::vector<Num> outcome;

    /// Per-outcome claim of the pool: collateral plus that outcome's tokens.
    std::vector<Num> combined() const {
        std::vector<Num> c(outcome);
        for (Num& x : c) x += collateral;
        return c;
    }
};

/// Market maker state Γ shared by both engines.
struct PoolState {
    Reserves<Amount> reserves;
    Shares total_supply;      // TS
    Amount target_balance;    // TB
    Amount fee_accrued;
    Shares treasury_shares;   // shares minted by buys

    static PoolState empty(std::size_t outcomes);

    std::size_t outcomes() const noexcept { return reserves.outcome.size(); }
    Reserves<long double> real() const;

    void snapshot_into(std::map<std::string, std::string>& fields) const;
};

namespace detail {

inline long double to_real(long double v) { return v; }
inline long double to_real(Amount v) { return v.to_real(); }

template <typename Num>
Num from_swap(long double v);
template <>
inline long double from_swap<long double>(long double v) { return v; }
// Executed swaps round the payout down so the pool never pays a fraction
// of a unit it does not hold.
template <>
inline Amount from_swap<Amount>(long double v) { return Amount::floor(v); }

}  // namespace detail

/// Per-bet buy pipeline shared by both engines:
///   combine the collateral pool into every conditional pool,
///   swap each unchosen minted token j for outcome i,
///   merge the common minimum back into collateral.
/// `swap(reserves, in, out, d_in)` returns the real-valued output; it sees the
/// input pool after the wager has been added to it. Returns the total payout
/// (the odd) in outcome-i tokens. Throws Errc::unfillable, leaving `r` in an
/// unspecified state, if a swap would overdraw the output pool.
template <typename Num, typename SwapFn>
Num run_buy_pipeline(Reserves<Num>& r, std::size_t i, Num wager, SwapFn&& swap) {
    Num odd = wager;
    for (Num& x : r.outcome) x += r.collateral;
    r.collateral = Num{};
    for (std::size_t j = 0; j < r.outcome.size(); ++j) {
        if (j == i) continue;
        r.outcome[j] += wager;
        Num s = detail::from_swap<Num>(swap(r, j, i, detail::to_real(wager)));
        if (r.outcome[i] < s) throw Error(Errc::unfillable, "swap output exceeds pool balance");
        odd += s;
        r.outcome[i] -= s;
    }
    Num m = *std::min_element(r.outcome.begin(), r.outcome.end());
    r.collateral = m;
    for (Num& x : r.outcome) x -= m;
    return odd;
}

}  // namespace ubet
