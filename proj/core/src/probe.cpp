#include "ubet/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string_view>

#include "ubet/market.hpp"
#include "ubet/rng.hpp"

namespace ubet {

std::vector<ContinuityRow> continuity_grid(const std::vector<long double>& rhos) {
    std::vector<ContinuityRow> rows;
    const long double reserves[] = {1.0L, 50.0L, 1000.0L, 1e5L};
    const long double fractions[] = {0.01L, 0.1L, 0.5L, 0.9L, 0.99L};
    for (long double rho : rhos) {
        ContinuityRow row;
        row.rho = rho;
        // fair_out = 1/(1+ρ), fair_in = ρ/(1+ρ) gives the requested ratio.
        const long double f_out = 1.0L / (1.0L + rho);
        const long double f_in = rho * f_out;
        for (long double r : reserves) {
            for (long double frac : fractions) {
                const long double tb = r * frac;
                // Lower edge: Δ = R − TB, so branch 1 applies with equality.
                const long double delta = r - tb;
                const long double d = delta / rho;
                const long double b1 = uamm_swap(d, r, tb, f_in, f_out).amount;
                const long double b2 = delta;
                row.max_gap_surplus = std::max(row.max_gap_surplus, std::fabs(b1 - b2));
                row.max_rel_gap_surplus = std::max(row.max_rel_gap_surplus, std::fabs(b1 - b2) / b2);

                // Upper edge: TB = R, where branch 1 collapses to α·Δ.
                const long double up1 = uamm_swap(d, r, r, f_in, f_out).amount;
                const long double x = r;  // TB²/R with TB = R
                const long double up3 = r - r * r / (x + delta);
                row.max_gap_deficit = std::max(row.max_gap_deficit, std::fabs(up1 - up3));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

bool to_number(const std::string& s, long double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtold(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::size_t decimals(const std::string& s) {
    const auto dot = s.find('.');
    return dot == std::string::npos ? 0 : s.size() - dot - 1;
}

bool is_share_field(const std::string& key) {
    auto ends = [&](std::string_view suffix) {
        return key.size() >= suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    return ends("lp_shares") || ends("total_supply") || ends("treasury_shares");
}

}  // namespace

FieldDiff diff_fields(const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b,
                      long double share_resolution) {
    FieldDiff d;
    auto bump = [&](long double rel, long double rel_ulp) {
        d.relative = std::max(d.relative, rel);
        d.beyond_ulp = std::max(d.beyond_ulp, rel_ulp);
    };
    if (a.size() != b.size()) bump(1, 1);
    for (const auto& [key, va] : a) {
        auto it = b.find(key);
        if (it == b.end()) {
            bump(1, 1);
            continue;
        }
        long double x = 0, y = 0;
        if (to_number(va, x) && to_number(it->second, y)) {
            const long double scale = std::max(std::fabs(x), std::fabs(y));
            if (scale == 0) continue;
            const long double gap = std::fabs(x - y);
            const long double rel = gap / scale;
            // Half a unit of slack on top of the unit absorbs the binary
            // rounding of the decimal strings.
            long double ulp = std::pow(10.0L, -static_cast<long double>(decimals(va)));
            if (share_resolution > 0 && is_share_field(key)) ulp = std::max(ulp, share_resolution);
            bump(rel, gap <= 1.5L * ulp ? 0.0L : rel);
        } else if (va != it->second) {
            bump(1, 1);
        }
    }
    return d;
}

long double PropertyReport::worst() const {
    return std::max({add_additivity.beyond_ulp, remove_additivity.beyond_ulp, add_remove.beyond_ulp,
                     remove_add.beyond_ulp});
}

long double PropertyReport::worst_raw() const {
    return std::max({add_additivity.relative, remove_additivity.relative, add_remove.relative, remove_add.relative});
}

namespace {

const AccountId kLp = "lp";
const AccountId kBettor = "bettor";

struct StateGen {
    std::mt19937_64 rng;

    long double uniform(long double lo, long double hi) {
        return std::uniform_real_distribution<long double>(lo, hi)(rng);
    }

    Amount amount(long double lo, long double hi) { return Amount::floor(uniform(lo, hi)); }

    Market market(bool with_bets) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        std::vector<long double> probs(k);
        long double sum = 0;
        for (auto& p : probs) sum += (p = uniform(0.1L, 1.0L));
        for (auto& p : probs) p /= sum;
        MarketSpec spec;
        spec.outcomes = k;
        Market m(spec, FairPrices(probs), EngineKind::uamm);
        m.ledger().deposit(kLp, Amount::from_units(10'000'000));
        m.fund(kLp, amount(1'000, 1'000'000));

        // A few more adds and removes so TS ≠ R0 in general.
        const int moves = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int i = 0; i < moves; ++i) {
            if (rng() & 1) {
                m.add_liquidity(kLp, amount(1, 50'000));
            } else {
                const Shares held = m.ledger().shares(kLp);
                const long double frac = uniform(0.01L, 0.3L);
                m.remove_liquidity(kLp, Shares::nearest(held.to_real() * frac));
            }
        }
        if (with_bets) {
            const int bets = std::uniform_int_distribution<int>(1, 40)(rng);
            std::lognormal_distribution<double> size(3.2, 1.2);
            for (int i = 0; i < bets; ++i) {
                const std::size_t side = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
                const Amount wager = Amount::floor(size(rng)) + Amount::from_units(1);
                const Quote q = m.quote(side, wager.to_real());
                if (!q.fillable) continue;
                m.ledger().deposit(kBettor, wager + mul(wager, spec.fee_rate));
                m.buy(kBettor, side, wager);
            }
        }
        return m;
    }
};

/// LP shares worth one collateral unit.
long double share_resolution(const Market& m) {
    const long double tv = total_value(m.pool(), m.fair());
    return tv > 0 ? Amount::from_raw(1).to_real() * m.pool().total_supply.to_real() / tv : 0.0L;
}

void merge(FieldDiff& into, const FieldDiff& d) {
    into.relative = std::max(into.relative, d.relative);
    into.beyond_ulp = std::max(into.beyond_ulp, d.beyond_ulp);
}

}  // namespace

PropertyReport run_property_suite(std::uint64_t seed, std::size_t states) {
    PropertyReport rep;
    rep.states = states;
    StateGen gen{substream(seed, 0, Stream::params)};
    for (std::size_t n = 0; n < states; ++n) {
        // Additivity on general states.
        {
            const Market base = gen.market(true);
            const Amount a = gen.amount(0.01L, 20'000);
            const Amount b = gen.amount(0.01L, 20'000);
            Market split = base, joint = base;
            split.add_liquidity(kLp, a);
            split.add_liquidity(kLp, b);
            joint.add_liquidity(kLp, a + b);
            merge(rep.add_additivity, diff_fields(split.snapshot_fields(), joint.snapshot_fields(), share_resolution(base)));

            const long double held = base.ledger().shares(kLp).to_real();
            const Shares s = Shares::nearest(held * gen.uniform(0.01L, 0.45L));
            const Shares t = Shares::nearest(held * gen.uniform(0.01L, 0.45L));
            Market rs = base, rj = base;
            rs.remove_liquidity(kLp, s);
            rs.remove_liquidity(kLp, t);
            rj.remove_liquidity(kLp, s + t);
            merge(rep.remove_additivity, diff_fields(rs.snapshot_fields(), rj.snapshot_fields(), share_resolution(base)));
        }
        // Reversibility on collateral-only states.
        {
            const Market base = gen.market(false);
            const auto before = base.snapshot_fields();

            Market m = base;
            const Shares minted = m.add_liquidity(kLp, gen.amount(0.01L, 50'000));
            m.remove_liquidity(kLp, minted);
            merge(rep.add_remove, diff_fields(before, m.snapshot_fields(), share_resolution(base)));

            Market r = base;
            const long double held = base.ledger().shares(kLp).to_real();
            const Amount paid = r.remove_liquidity(kLp, Shares::nearest(held * gen.uniform(0.01L, 0.5L)));
            r.add_liquidity(kLp, paid);
            merge(rep.remove_add, diff_fields(before, r.snapshot_fields(), share_resolution(base)));
        }
    }
    return rep;
}

}  // namespace ubet
