#include "ubet/ledger.hpp"

#include <algorithm>

namespace ubet {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "invalid argument";
        case Errc::insufficient_funds: return "insufficient funds";
        case Errc::market_not_open: return "market not open";
        case Errc::market_not_resolved: return "market not resolved";
        case Errc::betting_still_open: return "betting still open";
        case Errc::already_resolved: return "already resolved";
        case Errc::unauthorized: return "unauthorized";
        case Errc::unknown_outcome: return "unknown outcome";
        case Errc::unfillable: return "unfillable";
    }
    return "error";
}

void MarketSpec::validate() const {
    if (outcomes < 2) throw Error(Errc::invalid_argument, "a market needs at least two outcomes");
    if (fee_rate.is_negative() || fee_rate >= Amount::from_units(1)) {
        throw Error(Errc::invalid_argument, "fee rate must lie in [0, 1)");
    }
    auto bad_id = [](const std::string& s) {
        return s.empty() || s.find_first_of("=\n\r") != std::string::npos;
    };
    if (bad_id(market_id) || bad_id(oracle_id)) {
        throw Error(Errc::invalid_argument, "market and oracle ids must be non-empty single-line keys");
    }
}

Ledger::Ledger(MarketSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

Wallet& Ledger::wallet(const AccountId& account) {
    if (account.empty() || account.find_first_of("=\n\r") != std::string::npos) {
        throw Error(Errc::invalid_argument, "bad account id '" + account + "'");
    }
    auto [it, inserted] = wallets_.try_emplace(account);
    if (inserted) it->second.outcome.assign(spec_.outcomes, Amount{});
    return it->second;
}

const Wallet* Ledger::find(const AccountId& account) const {
    auto it = wallets_.find(account);
    return it == wallets_.end() ? nullptr : &it->second;
}

void Ledger::check_outcome(std::size_t k) const {
    if (k >= spec_.outcomes) {
        throw Error(Errc::unknown_outcome, "outcome " + std::to_string(k + 1) + " of " +
                                               std::to_string(spec_.outcomes));
    }
}

Amount& Ledger::slot(Wallet& w, TokenId token) {
    if (token.is_collateral()) return w.collateral;
    check_outcome(token.outcome_index());
    return w.outcome[token.outcome_index()];
}

void Ledger::deposit(const AccountId& account, Amount d) {
    if (d.is_negative()) throw Error(Errc::invalid_argument, "negative deposit");
    wallet(account).collateral += d;
}

void Ledger::mint(const AccountId& account, Amount d) {
    if (d.is_negative()) throw Error(Errc::invalid_argument, "negative mint");
    if (phase_ != Phase::open) throw Error(Errc::market_not_open, "mint");
    Wallet& w = wallet(account);
    if (w.collateral < d) throw Error(Errc::insufficient_funds, "mint " + d.str() + " by " + account);
    w.collateral -= d;
    for (Amount& a : w.outcome) a += d;
    locked_ += d;
}

void Ledger::merge(const AccountId& account, Amount d) {
    if (d.is_negative()) throw Error(Errc::invalid_argument, "negative merge");
    Wallet& w = wallet(account);
    for (std::size_t k = 0; k < w.outcome.size(); ++k) {
        if (w.outcome[k] < d) {
            throw Error(Errc::insufficient_funds,
                        "merge " + d.str() + " but outcome " + std::to_string(k + 1) + " holds " +
                            w.outcome[k].str());
        }
    }
    for (Amount& a : w.outcome) a -= d;
    w.collateral += d;
    locked_ -= d;
}

void Ledger::close_betting() {
    if (phase_ != Phase::open) throw Error(Errc::market_not_open, "close betting");
    phase_ = Phase::closed;
}

void Ledger::resolve(const AccountId& caller, std::size_t winner) {
    if (phase_ == Phase::resolved) throw Error(Errc::already_resolved, spec_.market_id);
    if (caller != spec_.oracle_id) throw Error(Errc::unauthorized, caller + " is not the oracle");
    if (phase_ == Phase::open) throw Error(Errc::betting_still_open, spec_.market_id);
    check_outcome(winner);
    phase_ = Phase::resolved;
    winner_ = winner;
}

Amount Ledger::redeem(const AccountId& account) {
    if (phase_ != Phase::resolved) throw Error(Errc::market_not_resolved, spec_.market_id);
    Wallet& w = wallet(account);
    Amount paid = w.outcome[*winner_];
    for (Amount& a : w.outcome) a = Amount{};
    w.collateral += paid;
    locked_ -= paid;
    return paid;
}

Amount Ledger::balance(const AccountId& account, TokenId token) const {
    const Wallet* w = find(account);
    if (!token.is_collateral()) check_outcome(token.outcome_index());
    if (!w) return Amount{};
    return token.is_collateral() ? w->collateral : w->outcome[token.outcome_index()];
}

Shares Ledger::shares(const AccountId& account) const {
    const Wallet* w = find(account);
    return w ? w->lp : Shares{};
}

Amount Ledger::outcome_supply(std::size_t k) const {
    check_outcome(k);
    Amount total;
    for (const auto& [id, w] : wallets_) total += w.outcome[k];
    return total;
}

Shares Ledger::total_account_shares() const {
    Shares total;
    for (const auto& [id, w] : wallets_) total += w.lp;
    return total;
}

void Ledger::credit(const AccountId& account, TokenId token, Amount d) {
    if (d.is_negative()) throw Error(Errc::invalid_argument, "negative credit");
    slot(wallet(account), token) += d;
}

void Ledger::debit(const AccountId& account, TokenId token, Amount d) {
    if (d.is_negative()) throw Error(Errc::invalid_argument, "negative debit");
    Amount& a = slot(wallet(account), token);
    if (a < d) throw Error(Errc::insufficient_funds, "debit " + d.str() + " from " + account);
    a -= d;
}

void Ledger::credit_shares(const AccountId& account, Shares s) {
    if (s.is_negative()) throw Error(Errc::invalid_argument, "negative shares");
    wallet(account).lp += s;
}

void Ledger::debit_shares(const AccountId& account, Shares s) {
    if (s.is_negative()) throw Error(Errc::invalid_argument, "negative shares");
    Wallet& w = wallet(account);
    if (w.lp < s) throw Error(Errc::insufficient_funds, account + " holds " + w.lp.str() + " shares");
    w.lp -= s;
}

void Ledger::lock(Amount d) { locked_ += d; }

void Ledger::release(Amount d) {
    if (locked_ < d) throw Error(Errc::insufficient_funds, "release exceeds locked collateral");
    locked_ -= d;
}

std::map<std::string, std::string> Ledger::snapshot_fields() const {
    std::map<std::string, std::string> f;
    f["market.id"] = spec_.market_id;
    f["market.outcomes"] = std::to_string(spec_.outcomes);
    f["market.fee_rate"] = spec_.fee_rate.str();
    f["market.oracle"] = spec_.oracle_id;
    f["market.locked"] = locked_.str();
    switch (phase_) {
        case Phase::open: f["market.phase"] = "open"; break;
        case Phase::closed: f["market.phase"] = "closed"; break;
        case Phase::resolved: f["market.phase"] = "resolved:" + std::to_string(*winner_ + 1); break;
    }
    for (const auto& [id, w] : wallets_) {
        const std::string base = "account." + id + ".";
        f[base + "collateral"] = w.collateral.str();
        f[base + "lp_shares"] = w.lp.str();
        for (std::size_t k = 0; k < w.outcome.size(); ++k) {
            f[base + "outcome." + std::to_string(k + 1)] = w.outcome[k].str();
        }
    }
    return f;
}

std::string render_snapshot(const std::map<std::string, std::string>& fields) {
    std::string out;
    for (const auto& [k, v] : fields) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

}  // namespace ubet
