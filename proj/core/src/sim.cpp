#include "ubet/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ubet/rng.hpp"

namespace ubet {

namespace {

double standard_normal(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(rng);
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mu);
                        if (!error) error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

const AccountId kLp = "lp";
const AccountId kBettor = "bettor";

void check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("invariant violated: ") + what);
}

}  // namespace

MarketParams sample_market_params(const SimConfig& config, std::uint64_t market_index) {
    MarketParams p;
    auto rng = substream(config.seed, market_index, Stream::params);
    p.outcomes = config.k.lo;
    if (!config.k.fixed()) {
        std::uniform_int_distribution<std::size_t> k(config.k.lo, config.k.hi);
        p.outcomes = k(rng);
    }
    if (config.probs.uniform) {
        std::uniform_real_distribution<double> u(static_cast<double>(config.probs.lo),
                                                 static_cast<double>(config.probs.hi));
        long double sum = 0;
        for (std::size_t i = 0; i < p.outcomes; ++i) {
            p.probs.push_back(u(rng));
            sum += p.probs.back();
        }
        for (long double& x : p.probs) x /= sum;
    } else {
        p.probs = config.probs.fixed;
    }
    if (config.n_bets.lognormal) {
        const double draw = std::exp(config.n_bets.mu + config.n_bets.sigma * standard_normal(rng));
        const double clamped = std::clamp(std::round(draw), static_cast<double>(config.n_bets.lo),
                                          static_cast<double>(config.n_bets.hi));
        p.n_bets = static_cast<std::size_t>(clamped);
    } else {
        p.n_bets = config.n_bets.fixed;
    }
    return p;
}

Amount draw_wager(std::mt19937_64& rng, double mu, double sigma) {
    const double dollars = std::exp(mu + sigma * standard_normal(rng));
    const long long cents = std::max(1LL, std::llround(dollars * 100.0));
    return Amount::from_raw(cents * (Amount::scale() / 100));
}

std::size_t draw_side(std::mt19937_64& rng, SideMode mode, const FairPrices& fair) {
    if (mode == SideMode::uniform) {
        std::uniform_int_distribution<std::size_t> u(0, fair.size() - 1);
        return u(rng);
    }
    std::uniform_real_distribution<long double> u(0.0L, 1.0L);
    const long double x = u(rng);
    long double acc = 0;
    for (std::size_t k = 0; k + 1 < fair.size(); ++k) {
        acc += fair[k];
        if (x < acc) return k;
    }
    return fair.size() - 1;
}

long double draw_threshold(std::mt19937_64& rng, double mean, double std) {
    return mean + std * standard_normal(rng);
}

Decision decide_rejection(const Quote& quote, long double threshold) {
    if (!quote.fillable) return Decision::reject;
    return quote.slippage > threshold ? Decision::reject : Decision::accept;
}

Decision decide_rejection(const Quote& quote, std::mt19937_64& rng, double mean, double std) {
    return decide_rejection(quote, draw_threshold(rng, mean, std));
}

BettorDraw draw_bettor(std::mt19937_64& rng, const SimConfig& config, const FairPrices& fair) {
    BettorDraw d;
    d.wager = draw_wager(rng, config.wager_mu, config.wager_sigma);
    d.side = draw_side(rng, config.side_mode, fair);
    d.threshold = draw_threshold(rng, config.rej_mean, config.rej_std);
    return d;
}

MarketRun run_market(const SimConfig& config, std::uint64_t market_index, const MarketParams& params,
                     const RunOptions& options) {
    MarketRun run;
    run.index = market_index;
    run.market_id = "m" + std::to_string(market_index);
    run.n_bets = params.n_bets;

    MarketSpec spec;
    spec.market_id = run.market_id;
    spec.outcomes = params.outcomes;
    spec.fee_rate = config.fee_rate;
    Market market(spec, FairPrices(params.probs), config.engine);
    const FairPrices& fair = market.fair();
    const std::size_t k = params.outcomes;
    run.outcome.fair.assign(fair.values().begin(), fair.values().end());

    // A constant-product seed needs collateral for its largest claim.
    long double need = config.funding.to_real();
    if (config.engine == EngineKind::cpmm) {
        const long double fmin = *std::min_element(fair.values().begin(), fair.values().end());
        need = config.funding.to_real() / (static_cast<long double>(k) * fmin);
    }
    market.ledger().deposit(kLp, Amount::floor(need) + Amount::from_units(1));
    market.fund(kLp, config.funding);

    auto claims = [&] {
        std::vector<long double> c = market.pool().real().combined();
        return c;
    };
    run.outcome.initial = claims();
    run.tv_initial = total_value(market.pool(), fair);

    auto record_step = [&](const std::vector<long double>& c, std::size_t rejections) {
        run.ev_path.push_back(expected_value(c, run.outcome.fair));
        long double eip = 0;
        for (std::size_t i = 0; i < k; ++i) eip += run.outcome.fair[i] * (c[i] - run.outcome.initial[i]);
        run.eip_path.push_back(eip);
        run.rejection_path.push_back(rejections);
        if (options.record_path) run.path.insert(run.path.end(), c.begin(), c.end());
    };
    record_step(run.outcome.initial, 0);
    if (options.record_bets) run.bets.reserve(params.n_bets);

    auto rng = substream(config.seed, market_index, Stream::bets);
    std::size_t rejections = 0;
    for (std::size_t step = 0; step < params.n_bets; ++step) {
        const BettorDraw draw = draw_bettor(rng, config, fair);
        const Quote q = market.quote(draw.side, draw.wager.to_real());
        BetRecord rec;
        rec.step = step;
        rec.outcome = draw.side;
        rec.wager = draw.wager;
        rec.fair_price = fair[draw.side];
        rec.implied_price = q.implied_price;
        rec.slippage = q.slippage;
        rec.threshold = draw.threshold;
        rec.overround = market.overround();
        run.overround_sum += rec.overround;
        if (!q.fillable) ++run.unfillable;
        if (decide_rejection(q, draw.threshold) == Decision::accept) {
            const Amount fee = mul(draw.wager, config.fee_rate);
            market.ledger().deposit(kBettor, draw.wager + fee);
            const BuyResult r = market.buy(kBettor, draw.side, draw.wager);
            rec.accepted = true;
            rec.odd = r.odd;
            rec.fee = r.fee;
            run.volume += draw.wager;
            run.fees += r.fee;
            ++run.accepted;
            if (options.check_invariants) check(market.conserved(), "conservation after buy");
        } else {
            ++rejections;
        }
        if (options.record_bets) run.bets.push_back(rec);
        record_step(claims(), rejections);
    }

    run.outcome.final = claims();
    run.tv_final = total_value(market.pool(), fair);
    run.ev_final = run.ev_path.back();
    run.final_pool = market.pool();

    auto wrng = substream(config.seed, market_index, Stream::winner);
    std::discrete_distribution<std::size_t> pick(run.outcome.fair.begin(), run.outcome.fair.end());
    run.outcome.winner = pick(wrng);

    market.close_betting();
    market.resolve(spec.oracle_id, run.outcome.winner);
    market.redeem(kBettor);
    market.redeem(kLp);
    market.redeem_pool();
    if (options.check_invariants) {
        check(market.conserved(), "conservation after settlement");
        check(market.ledger().locked().is_zero(), "locked collateral left after full redemption");
    }
    run.pool_settled = market.pool().reserves.collateral;
    return run;
}

MarketRun run_single_market(const SimConfig& config, std::uint64_t seed, const RunOptions& options) {
    SimConfig c = config;
    c.seed = seed;
    return run_market(c, 0, sample_market_params(c, 0), options);
}

MetricsReport summarize(std::span<const MarketRun> markets) {
    MetricsReport r;
    r.markets = markets.size();
    if (markets.empty()) return r;
    std::vector<MarketOutcome> outcomes;
    std::vector<long double> tv, ev;
    std::size_t quotes = 0;
    long double overround = 0;
    std::size_t longest = 0;
    for (const MarketRun& m : markets) {
        outcomes.push_back(m.outcome);
        tv.push_back(m.tv_final - m.tv_initial);
        ev.push_back(m.ev_final);
        r.bets_attempted += m.n_bets;
        r.bets_accepted += m.accepted;
        r.volume += m.volume;
        r.fees += m.fees;
        overround += m.overround_sum;
        quotes += m.n_bets;
        longest = std::max(longest, m.ev_path.size());
    }
    r.rejection_rate = r.bets_attempted
                           ? 1.0L - static_cast<long double>(r.bets_accepted) / static_cast<long double>(r.bets_attempted)
                           : 0.0L;
    r.eip = eip(outcomes);
    r.epp = epp(outcomes);
    r.tp = static_cast<long double>(markets.size()) * r.epp.mean;
    r.tv_pnl = mean_std(tv);
    r.ev_final = mean_std(ev);
    r.vigorish = quotes ? overround / static_cast<long double>(quotes) : 0.0L;
    r.ev_series.assign(longest, 0.0L);
    std::vector<std::size_t> counts(longest, 0);
    for (const MarketRun& m : markets) {
        for (std::size_t t = 0; t < m.ev_path.size(); ++t) {
            r.ev_series[t] += m.ev_path[t];
            ++counts[t];
        }
    }
    for (std::size_t t = 0; t < longest; ++t) r.ev_series[t] /= static_cast<long double>(counts[t]);
    return r;
}

MultiRun run_multi_market(const SimConfig& config, const RunOptions& options) {
    config.validate();
    MultiRun out;
    out.markets.resize(config.n_markets);
    parallel_for(config.n_markets, [&](std::size_t i) {
        out.markets[i] = run_market(config, i, sample_market_params(config, i), options);
    });
    out.report = summarize(out.markets);
    return out;
}

FullRun run_full_market(const SimConfig& config, std::size_t trials, const RunOptions& options) {
    config.validate();
    if (trials < 1) throw Error(Errc::invalid_argument, "need at least one trial");
    FullRun out;
    const std::size_t m = config.n_markets;
    out.markets.resize(trials * m);
    parallel_for(trials * m, [&](std::size_t i) {
        out.markets[i] = run_market(config, i, sample_market_params(config, i), options);
    });
    out.funding_total = config.funding.to_real() * static_cast<long double>(m);

    std::vector<long double> bets, volume, epps, tps, fees, tpf;
    for (std::size_t t = 0; t < trials; ++t) {
        std::span<const MarketRun> slice(out.markets.data() + t * m, m);
        const MetricsReport r = summarize(slice);
        TrialSummary s;
        s.bets = r.bets_accepted;
        s.attempted = r.bets_attempted;
        s.volume = r.volume;
        s.fees = r.fees;
        s.epp = r.epp.mean;
        s.tp = r.tp;
        s.tp_plus_fee = r.tp + r.fees.to_real();
        s.funding_total = out.funding_total;
        out.trials.push_back(s);
        bets.push_back(static_cast<long double>(s.bets));
        volume.push_back(s.volume.to_real());
        epps.push_back(s.epp);
        tps.push_back(s.tp);
        fees.push_back(s.fees.to_real());
        tpf.push_back(s.tp_plus_fee);
    }
    out.bets = mean_std(bets);
    out.volume = mean_std(volume);
    out.epp = mean_std(epps);
    out.tp = mean_std(tps);
    out.fees = mean_std(fees);
    out.tp_plus_fee = mean_std(tpf);
    out.report = summarize(out.markets);
    return out;
}

SimConfig prob_sweep_config(const SimConfig& base, long double p, SideMode mode) {
    if (!base.k.fixed()) throw Error(Errc::invalid_argument, "probability sweep needs a fixed k");
    const std::size_t k = base.k.lo;
    SimConfig c = base;
    c.side_mode = mode;
    c.probs.uniform = false;
    c.probs.fixed.assign(k, (1.0L - p) / static_cast<long double>(k - 1));
    c.probs.fixed[0] = p;
    c.probs.fixed[k - 1] = 1.0L;
    for (std::size_t i = 0; i + 1 < k; ++i) c.probs.fixed[k - 1] -= c.probs.fixed[i];
    return c;
}

SimConfig rejection_sweep_config(const SimConfig& base, long double threshold) {
    SimConfig c = base;
    c.rej_mean = static_cast<double>(threshold);
    c.rej_std = 0.0;
    return c;
}

std::vector<ProbSweepRow> sweep_probabilities(const SimConfig& base, std::span<const long double> probs,
                                              std::span<const SideMode> modes) {
    if (!base.k.fixed()) throw Error(Errc::invalid_argument, "probability sweep needs a fixed k");
    const std::size_t k = base.k.lo;
    std::vector<ProbSweepRow> rows;
    for (SideMode mode : modes) {
        for (long double p : probs) {
            MultiRun run = run_multi_market(prob_sweep_config(base, p, mode), {false, false, true});
            ProbSweepRow row;
            row.prob = p;
            row.side_mode = mode;
            row.report = run.report;
            row.mean_final.assign(k, 0.0L);
            for (const MarketRun& mr : run.markets) {
                for (std::size_t i = 0; i < k; ++i) row.mean_final[i] += mr.outcome.final[i];
            }
            for (long double& x : row.mean_final) x /= static_cast<long double>(run.markets.size());
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<RejectionSweepRow> sweep_rejection(const SimConfig& base, std::span<const long double> thresholds) {
    std::vector<RejectionSweepRow> rows;
    for (long double thr : thresholds) {
        rows.push_back({thr, run_multi_market(rejection_sweep_config(base, thr), {false, false, true}).report});
    }
    return rows;
}

}  // namespace ubet
