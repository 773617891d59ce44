#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ubet/amount.hpp"
#include "ubet/error.hpp"

namespace ubet {

using AccountId = std::string;

/// Either the collateral token or the conditional token of one outcome.
/// Outcome indices are zero-based internally; text formats print them 1-based.
class TokenId {
public:
    static constexpr TokenId collateral() noexcept { return TokenId(0); }
    static constexpr TokenId outcome(std::size_t k) noexcept { return TokenId(k + 1); }

    constexpr bool is_collateral() const noexcept { return v_ == 0; }
    constexpr std::size_t outcome_index() const noexcept { return v_ - 1; }

    friend constexpr bool operator==(TokenId, TokenId) noexcept = default;

private:
    constexpr explicit TokenId(std::size_t v) noexcept : v_(v) {}
    std::size_t v_;
};

struct MarketSpec {
    std::string market_id = "m0";
    std::size_t outcomes = 2;
    Amount fee_rate = Amount::from_raw(25'000);  // 0.025
    std::string oracle_id = "oracle";

    void validate() const;
};

enum class Phase { open, closed, resolved };

struct Wallet {
    Amount collateral;
    std::vector<Amount> outcome;
    Shares lp;
};

/// Conditional-token ledger for one market.
///
/// Tracks account wallets and the locked collateral L backing every minted
/// set. Reserves held by a pool engine live outside the ledger; engines move
/// tokens in and out through credit/debit and mint or merge their own sets
/// through lock/release, so that for every outcome k
///   sum(account holdings of k) + pool reserve of k == L
/// while the market is unresolved.
class Ledger {
public:
    explicit Ledger(MarketSpec spec);

    const MarketSpec& spec() const noexcept { return spec_; }
    std::size_t outcomes() const noexcept { return spec_.outcomes; }
    Phase phase() const noexcept { return phase_; }
    std::optional<std::size_t> winner() const noexcept { return winner_; }
    Amount locked() const noexcept { return locked_; }

    /// Collateral entering the system from outside (funding, bettor wallets).
    void deposit(const AccountId& account, Amount d);

    void mint(const AccountId& account, Amount d);
    void merge(const AccountId& account, Amount d);

    /// Ends the betting period. Only an open market can be closed.
    void close_betting();
    void resolve(const AccountId& caller, std::size_t winner);
    /// Converts the winning balance 1:1 into collateral and burns every
    /// outcome token the account holds. Returns the collateral credited.
    Amount redeem(const AccountId& account);

    Amount balance(const AccountId& account, TokenId token) const;
    Shares shares(const AccountId& account) const;
    /// Sum of account holdings of one outcome token.
    Amount outcome_supply(std::size_t k) const;
    Shares total_account_shares() const;
    const std::map<AccountId, Wallet>& wallets() const noexcept { return wallets_; }

    // Engine-facing primitives. Each one alone breaks conservation; engines
    // pair them with a matching change to their own reserves.
    void credit(const AccountId& account, TokenId token, Amount d);
    void debit(const AccountId& account, TokenId token, Amount d);
    void credit_shares(const AccountId& account, Shares s);
    void debit_shares(const AccountId& account, Shares s);
    void lock(Amount d);
    void release(Amount d);

    /// Canonical `key=value` lines, sorted by key.
    std::map<std::string, std::string> snapshot_fields() const;

private:
    Wallet& wallet(const AccountId& account);
    const Wallet* find(const AccountId& account) const;
    void check_outcome(std::size_t k) const;
    Amount& slot(Wallet& w, TokenId token);

    MarketSpec spec_;
    Phase phase_ = Phase::open;
    std::optional<std::size_t> winner_;
    Amount locked_;
    std::map<AccountId, Wallet> wallets_;
};

/// Joins snapshot fields into the canonical text form, one per line.
std::string render_snapshot(const std::map<std::string, std::string>& fields);

}  // namespace ubet
