#include "ubet/metrics.hpp"

#include <cmath>
#include <numeric>

#include "ubet/error.hpp"

namespace ubet {

long double expected_value(std::span<const long double> balances, std::span<const long double> fair) {
    if (balances.size() != fair.size()) throw Error(Errc::invalid_argument, "balance/price size mismatch");
    const long double z = std::accumulate(balances.begin(), balances.end(), 0.0L);
    long double ev = 0;
    for (std::size_t k = 0; k < balances.size(); ++k) {
        ev += fair[k] * balances[k] - (1 - fair[k]) * (z - balances[k]);
    }
    return ev;
}

long double impermanent_pnl(const MarketOutcome& m) {
    long double v = 0;
    for (std::size_t k = 0; k < m.fair.size(); ++k) v += m.fair[k] * (m.final[k] - m.initial[k]);
    return v;
}

long double permanent_pnl(const MarketOutcome& m) { return m.final.at(m.winner) - m.initial.at(m.winner); }

long double MeanStd::stderr_mean() const { return n ? std / std::sqrt(static_cast<long double>(n)) : 0; }

MeanStd mean_std(std::span<const long double> xs) {
    MeanStd r;
    r.n = xs.size();
    if (xs.empty()) return r;
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0L) / static_cast<long double>(xs.size());
    if (xs.size() > 1) {
        long double ss = 0;
        for (long double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.std = std::sqrt(ss / static_cast<long double>(xs.size() - 1));
    }
    return r;
}

namespace {

template <typename Fn>
MeanStd per_market(std::span<const MarketOutcome> markets, Fn fn) {
    if (markets.empty()) throw Error(Errc::invalid_argument, "no completed markets");
    std::vector<long double> xs;
    xs.reserve(markets.size());
    for (const MarketOutcome& m : markets) xs.push_back(fn(m));
    return mean_std(xs);
}

}  // namespace

MeanStd eip(std::span<const MarketOutcome> markets) { return per_market(markets, impermanent_pnl); }

MeanStd epp(std::span<const MarketOutcome> markets) {
    for (const MarketOutcome& m : markets) {
        if (m.winner >= m.final.size()) throw Error(Errc::invalid_argument, "market without a sampled winner");
    }
    return per_market(markets, permanent_pnl);
}

long double total_pnl(std::span<const MarketOutcome> markets) {
    return static_cast<long double>(markets.size()) * epp(markets).mean;
}

long double vigorish(std::span<const long double> overrounds) {
    if (overrounds.empty()) throw Error(Errc::invalid_argument, "no quotes");
    return std::accumulate(overrounds.begin(), overrounds.end(), 0.0L) / static_cast<long double>(overrounds.size());
}

}  // namespace ubet
