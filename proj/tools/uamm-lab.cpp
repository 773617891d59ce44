// uamm-lab: quotes, seeded simulations and invariant probes for the UAMM
// betting pool and its constant-product baseline.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ubet/market.hpp"
#include "ubet/probe.hpp"
#include "ubet/sim.hpp"

namespace fs = std::filesystem;
using namespace ubet;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvariant = 2;

const char* kColumnsHelp = R"(Output files (fixed column sets):
  quote CSV row  engine,market_id,outcome,wager,odd,implied_price,slippage,fee
  bets.csv       run,market_id,step,outcome,wager,fee,odd,fair_price,implied_price,
                 slippage,threshold,overround,accepted
  markets.csv    run,market_id,engine,outcomes,n_bets,accepted,rejection_rate,volume,fees,
                 winner,eip,epp,tv_pnl,ev_final,vigorish,pool_settled,fair,initial,final
                 (fair/initial/final are ';'-joined per-outcome values)
  summary.csv    run,engine,markets,bets_attempted,bets_accepted,rejection_rate,volume,fees,
                 eip_mean,eip_std,epp_mean,epp_std,tp,tp_plus_fee,tv_pnl_mean,ev_final_mean,
                 vigorish,funding_total
  single: fig_bet_sizes.csv (step,wager), fig_balances.csv (step,pool_1..pool_K),
          fig_rejections.csv (step,rejections), fig_eip.csv (step,eip)
  multi:  fig_balances.csv (step,pool_1..pool_K, market means), fig_ev.csv (step,ev),
          fig_eip.csv (step,eip), fig_epp.csv (market,epp)
  full:   table1.csv (metric,mean,std,pct_of_funding); summary.csv has one row per trial
  sweep:  fig_sweep_prob.csv (side_mode,prob,eip,epp,ev,pool_1..pool_K),
          fig_sweep_rejection.csv (threshold,acceptance_rate,eip,epp,tp),
          fig_eip_vs_bets.csv (n_bets,eip)
Exit codes: 0 success, 1 usage error, 2 invariant violation.
Environment: UAMM_LAB_SEED overrides the config seed (--seed overrides both).)";

std::string num(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", v);
    return buf;
}

std::string join(const std::vector<long double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += num(xs[i]);
    }
    return out;
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::vector<std::string> pool_header(const char* x, std::size_t k) {
    std::vector<std::string> h{x};
    for (std::size_t i = 1; i <= k; ++i) h.push_back("pool_" + std::to_string(i));
    return h;
}

const std::vector<std::string> kBetsHeader = {"run", "market_id", "step", "outcome", "wager", "fee", "odd",
                                              "fair_price", "implied_price", "slippage", "threshold",
                                              "overround", "accepted"};
const std::vector<std::string> kMarketsHeader = {
    "run",   "market_id", "engine", "outcomes", "n_bets",   "accepted",     "rejection_rate",
    "volume", "fees",     "winner", "eip",      "epp",      "tv_pnl",       "ev_final",
    "vigorish", "pool_settled", "fair", "initial", "final"};
const std::vector<std::string> kSummaryHeader = {
    "run",      "engine",   "markets",  "bets_attempted", "bets_accepted", "rejection_rate",
    "volume",   "fees",     "eip_mean", "eip_std",        "epp_mean",      "epp_std",
    "tp",       "tp_plus_fee", "tv_pnl_mean", "ev_final_mean", "vigorish", "funding_total"};

void write_bets(Csv& csv, const std::string& run, const MarketRun& m) {
    for (const BetRecord& b : m.bets) {
        csv.row({run, m.market_id, std::to_string(b.step), std::to_string(b.outcome + 1), b.wager.str(),
                 b.fee.str(), b.odd.str(), num(b.fair_price), num(b.implied_price), num(b.slippage),
                 num(b.threshold), num(b.overround), b.accepted ? "1" : "0"});
    }
}

void write_market(Csv& csv, const std::string& run, const SimConfig& cfg, const MarketRun& m) {
    const long double rej =
        m.n_bets ? 1.0L - static_cast<long double>(m.accepted) / static_cast<long double>(m.n_bets) : 0.0L;
    const long double vig = m.n_bets ? m.overround_sum / static_cast<long double>(m.n_bets) : 0.0L;
    csv.row({run, m.market_id, to_string(cfg.engine), std::to_string(m.outcomes()), std::to_string(m.n_bets),
             std::to_string(m.accepted), num(rej), m.volume.str(), m.fees.str(),
             std::to_string(m.outcome.winner + 1), num(impermanent_pnl(m.outcome)), num(permanent_pnl(m.outcome)),
             num(m.tv_final - m.tv_initial), num(m.ev_final), num(vig), m.pool_settled.str(), join(m.outcome.fair),
             join(m.outcome.initial), join(m.outcome.final)});
}

std::vector<std::string> summary_cells(const std::string& run, const SimConfig& cfg, const MetricsReport& r,
                                       long double funding_total) {
    return {run,
            to_string(cfg.engine),
            std::to_string(r.markets),
            std::to_string(r.bets_attempted),
            std::to_string(r.bets_accepted),
            num(r.rejection_rate),
            r.volume.str(),
            r.fees.str(),
            num(r.eip.mean),
            num(r.eip.std),
            num(r.epp.mean),
            num(r.epp.std),
            num(r.tp),
            num(r.tp + r.fees.to_real()),
            num(r.tv_pnl.mean),
            num(r.ev_final.mean),
            num(r.vigorish),
            num(funding_total)};
}

void print_summary(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << kSummaryHeader[i];
    std::cout << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << cells[i];
    std::cout << '\n';
}

// ---- quote -----------------------------------------------------------------

struct QuoteArgs {
    std::size_t k = 2;
    std::string probs;
    std::string funding = "10000";
    std::size_t outcome = 1;
    std::string wager;
    std::string fee_rate = "0.025";
    std::string engine = "uamm";
    std::string market_id = "m0";
    bool csv_only = false;
};

int cmd_quote(const QuoteArgs& a) {
    FairPrices fair = a.probs.empty() ? FairPrices::uniform(a.k) : FairPrices::parse(a.probs);
    if (fair.size() != a.k) {
        throw Error(Errc::invalid_argument,
                    "--probs has " + std::to_string(fair.size()) + " entries but --k is " + std::to_string(a.k));
    }
    if (a.outcome < 1 || a.outcome > a.k) throw Error(Errc::invalid_argument, "--outcome must be in 1..k");
    MarketSpec spec;
    spec.market_id = a.market_id;
    spec.outcomes = a.k;
    spec.fee_rate = Amount::parse(a.fee_rate);
    Market m(spec, fair, parse_engine(a.engine));
    const Amount funding = Amount::parse(a.funding);
    // Enough for a constant-product seed's largest claim as well.
    const long double fmin = *std::min_element(fair.values().begin(), fair.values().end());
    m.ledger().deposit("lp", Amount::floor(funding.to_real() / fmin) + Amount::from_units(1));
    m.fund("lp", funding);

    const Amount wager = Amount::parse(a.wager);
    if (wager.is_negative()) throw Error(Errc::invalid_argument, "--wager must be >= 0");
    const Quote q = m.quote(a.outcome - 1, wager.to_real());
    // Quotes are real-valued; execution floors, display rounds.
    const Amount odd = Amount::nearest(q.odd);
    if (!a.csv_only) {
        std::printf("odd            %s\n", odd.str().c_str());
        std::printf("decimal_odds   %.6Lf\n", q.decimal_odds());
        std::printf("implied_price  %.6Lf\n", q.implied_price);
        std::printf("slippage       %.6Lf\n", q.slippage);
        std::printf("fee            %s\n", q.fee.str().c_str());
        std::printf("fillable       %s\n", q.fillable ? "yes" : "no");
    }
    std::printf("engine,market_id,outcome,wager,odd,implied_price,slippage,fee\n");
    std::printf("%s,%s,%zu,%s,%s,%s,%s,%s\n", a.engine.c_str(), a.market_id.c_str(), a.outcome, wager.str().c_str(),
                odd.str().c_str(), num(q.implied_price).c_str(), num(q.slippage).c_str(), q.fee.str().c_str());
    return kOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string mode = "single";
    std::string engine;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::size_t trials = 100;
    std::vector<std::string> set;
};

SimConfig build_config(const SimulateArgs& a) {
    SimConfig base = a.mode == "full" ? SimConfig::full_defaults() : SimConfig{};
    SimConfig cfg = a.config.empty() ? base : SimConfig::load(a.config, base);
    if (const char* env = std::getenv("UAMM_LAB_SEED"); env && *env) cfg.set("seed", env);
    for (const std::string& kv : a.set) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(Errc::invalid_argument, "--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!a.engine.empty()) cfg.engine = parse_engine(a.engine);
    if (a.seed) cfg.seed = *a.seed;
    cfg.validate();
    return cfg;
}

void simulate_single(const SimConfig& cfg, const fs::path& out) {
    const MarketRun m = run_single_market(cfg, cfg.seed);
    Csv bets(out / "bets.csv", kBetsHeader);
    write_bets(bets, "single", m);
    Csv markets(out / "markets.csv", kMarketsHeader);
    write_market(markets, "single", cfg, m);
    const MarketRun* one = &m;
    const MetricsReport r = summarize(std::span<const MarketRun>(one, 1));
    Csv summary(out / "summary.csv", kSummaryHeader);
    auto cells = summary_cells("single", cfg, r, cfg.funding.to_real());
    summary.row(cells);

    const std::size_t k = m.outcomes();
    Csv sizes(out / "fig_bet_sizes.csv", {"step", "wager"});
    for (const BetRecord& b : m.bets) sizes.row({std::to_string(b.step), b.wager.str()});
    Csv bal(out / "fig_balances.csv", pool_header("step", k));
    Csv rej(out / "fig_rejections.csv", {"step", "rejections"});
    Csv eip(out / "fig_eip.csv", {"step", "eip"});
    for (std::size_t t = 0; t < m.ev_path.size(); ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (std::size_t i = 0; i < k; ++i) row.push_back(num(m.path[t * k + i]));
        bal.row(row);
        rej.row({std::to_string(t), std::to_string(m.rejection_path[t])});
        eip.row({std::to_string(t), num(m.eip_path[t])});
    }
    print_summary(cells);
}

void simulate_multi(const SimConfig& cfg, const fs::path& out) {
    const MultiRun run = run_multi_market(cfg, {true, true, true});
    Csv bets(out / "bets.csv", kBetsHeader);
    Csv markets(out / "markets.csv", kMarketsHeader);
    for (const MarketRun& m : run.markets) {
        write_bets(bets, "multi", m);
        write_market(markets, "multi", cfg, m);
    }
    Csv summary(out / "summary.csv", kSummaryHeader);
    auto cells = summary_cells("multi", cfg, run.report, cfg.funding.to_real() * static_cast<long double>(cfg.n_markets));
    summary.row(cells);

    // Step-wise means over markets; only meaningful when every market has the same K.
    std::size_t steps = 0;
    const std::size_t k = run.markets.front().outcomes();
    bool same_k = true;
    for (const MarketRun& m : run.markets) {
        steps = std::max(steps, m.ev_path.size());
        same_k = same_k && m.outcomes() == k;
    }
    Csv ev(out / "fig_ev.csv", {"step", "ev"});
    for (std::size_t t = 0; t < run.report.ev_series.size(); ++t) ev.row({std::to_string(t), num(run.report.ev_series[t])});
    Csv eip(out / "fig_eip.csv", {"step", "eip"});
    Csv bal(out / "fig_balances.csv", pool_header("step", same_k ? k : 0));
    for (std::size_t t = 0; t < steps; ++t) {
        long double e = 0;
        std::vector<long double> pools(k, 0.0L);
        std::size_t n = 0;
        for (const MarketRun& m : run.markets) {
            if (t >= m.eip_path.size()) continue;
            ++n;
            e += m.eip_path[t];
            if (same_k) {
                for (std::size_t i = 0; i < k; ++i) pools[i] += m.path[t * k + i];
            }
        }
        eip.row({std::to_string(t), num(e / static_cast<long double>(n))});
        std::vector<std::string> row{std::to_string(t)};
        if (same_k) {
            for (long double p : pools) row.push_back(num(p / static_cast<long double>(n)));
        }
        bal.row(row);
    }
    Csv epp(out / "fig_epp.csv", {"market", "epp"});
    for (const MarketRun& m : run.markets) epp.row({std::to_string(m.index), num(permanent_pnl(m.outcome))});
    print_summary(cells);
}

void simulate_full(const SimConfig& cfg, std::size_t trials, const fs::path& out) {
    const FullRun run = run_full_market(cfg, trials, {false, true, true});
    const std::size_t per = cfg.n_markets;
    Csv bets(out / "bets.csv", kBetsHeader);
    Csv markets(out / "markets.csv", kMarketsHeader);
    Csv summary(out / "summary.csv", kSummaryHeader);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::string label = "trial" + std::to_string(t);
        std::span<const MarketRun> slice(run.markets.data() + t * per, per);
        for (const MarketRun& m : slice) {
            write_bets(bets, label, m);
            write_market(markets, label, cfg, m);
        }
        summary.row(summary_cells(label, cfg, summarize(slice), run.funding_total));
    }
    Csv table(out / "table1.csv", {"metric", "mean", "std", "pct_of_funding"});
    auto line = [&](const char* name, const MeanStd& ms, bool pct) {
        table.row({name, num(ms.mean), num(ms.std), pct ? num(100.0L * ms.mean / run.funding_total) : ""});
        std::printf("%-12s %14.4Lf +- %-12.4Lf", name, ms.mean, ms.std);
        if (pct) std::printf(" (%.4Lf%% of funding)", 100.0L * ms.mean / run.funding_total);
        std::printf("\n");
    };
    std::printf("%zu trials x %zu markets, funding %s per market (%s engine)\n", trials, per, cfg.funding.str().c_str(),
                to_string(cfg.engine));
    line("bets", run.bets, false);
    line("volume", run.volume, false);
    line("epp", run.epp, true);
    line("tp", run.tp, true);
    line("fees", run.fees, true);
    line("tp_plus_fee", run.tp_plus_fee, true);
    table.row({"vigorish", num(run.report.vigorish), "", ""});
    table.row({"rejection_rate", num(run.report.rejection_rate), "", ""});
}

void simulate_sweep(const SimConfig& cfg, const fs::path& out) {
    if (!cfg.k.fixed()) throw Error(Errc::invalid_argument, "sweep mode needs a fixed k");
    const std::size_t k = cfg.k.lo;
    Csv bets(out / "bets.csv", kBetsHeader);
    Csv markets(out / "markets.csv", kMarketsHeader);
    Csv summary(out / "summary.csv", kSummaryHeader);
    const long double funding_total = cfg.funding.to_real() * static_cast<long double>(cfg.n_markets);

    auto run_point = [&](const std::string& label, const SimConfig& c) {
        const MultiRun run = run_multi_market(c, {false, true, true});
        for (const MarketRun& m : run.markets) {
            write_bets(bets, label, m);
            write_market(markets, label, c, m);
        }
        auto cells = summary_cells(label, c, run.report, funding_total);
        summary.row(cells);
        std::cout << cells[0];
        for (std::size_t i = 1; i < cells.size(); ++i) std::cout << ',' << cells[i];
        std::cout << '\n';
        return run;
    };

    for (std::size_t i = 0; i < kSummaryHeader.size(); ++i) std::cout << (i ? "," : "") << kSummaryHeader[i];
    std::cout << '\n';

    Csv prob(out / "fig_sweep_prob.csv", [&] {
        std::vector<std::string> h{"side_mode", "prob", "eip", "epp", "ev"};
        for (std::size_t i = 1; i <= k; ++i) h.push_back("pool_" + std::to_string(i));
        return h;
    }());
    for (SideMode mode : {SideMode::true_prob, SideMode::uniform}) {
        for (int step = 2; step <= 8; ++step) {
            const long double p = step / 10.0L;
            const std::string label = std::string("prob=") + num(p) + "/" + to_string(mode);
            const MultiRun run = run_point(label, prob_sweep_config(cfg, p, mode));
            std::vector<long double> pools(k, 0.0L);
            for (const MarketRun& m : run.markets) {
                for (std::size_t i = 0; i < k; ++i) pools[i] += m.outcome.final[i];
            }
            std::vector<std::string> row{to_string(mode), num(p), num(run.report.eip.mean), num(run.report.epp.mean),
                                         num(run.report.ev_final.mean)};
            for (long double x : pools) row.push_back(num(x / static_cast<long double>(run.markets.size())));
            prob.row(row);
        }
    }

    Csv rej(out / "fig_sweep_rejection.csv", {"threshold", "acceptance_rate", "eip", "epp", "tp"});
    for (long double thr : {0.025L, 0.035L, 0.045L, 0.065L, 1.0L}) {
        const MultiRun run = run_point("threshold=" + num(thr), rejection_sweep_config(cfg, thr));
        rej.row({num(thr), num(1.0L - run.report.rejection_rate), num(run.report.eip.mean), num(run.report.epp.mean),
                 num(run.report.tp)});
    }

    Csv bets_eip(out / "fig_eip_vs_bets.csv", {"n_bets", "eip"});
    for (std::size_t n : {10, 50, 100, 500}) {
        SimConfig c = cfg;
        c.n_bets.lognormal = false;
        c.n_bets.fixed = n;
        const MultiRun run = run_point("n_bets=" + std::to_string(n), c);
        bets_eip.row({std::to_string(n), num(run.report.eip.mean)});
    }
}

int cmd_simulate(const SimulateArgs& a) {
    const SimConfig cfg = build_config(a);
    const fs::path out(a.out);
    fs::create_directories(out);
    if (a.mode == "single") {
        simulate_single(cfg, out);
    } else if (a.mode == "multi") {
        simulate_multi(cfg, out);
    } else if (a.mode == "full") {
        simulate_full(cfg, a.trials, out);
    } else {
        simulate_sweep(cfg, out);
    }
    {
        std::ofstream used(out / "config.txt");
        used << cfg.render();
    }
    return kOk;
}

// ---- probe -----------------------------------------------------------------

struct ProbeArgs {
    bool continuity = false;
    bool properties = false;
    std::size_t states = 1000;
    std::uint64_t seed = 7;
    double tolerance = 1e-9;
};

int cmd_probe(const ProbeArgs& a) {
    const bool both = !a.continuity && !a.properties;
    int rc = kOk;
    if (a.continuity || both) {
        std::printf("continuity (branch boundary gaps, report only)\n");
        std::printf("%8s %16s %16s %16s\n", "rho", "gap_surplus", "rel_gap_surplus", "gap_deficit");
        for (const ContinuityRow& r : continuity_grid({0.25L, 0.5L, 1.0L, 2.0L, 4.0L})) {
            std::printf("%8.4Lf %16.6Le %16.6Le %16.6Le\n", r.rho, r.max_gap_surplus, r.max_rel_gap_surplus,
                        r.max_gap_deficit);
        }
    }
    if (a.properties || both) {
        const PropertyReport r = run_property_suite(a.seed, a.states);
        std::printf("properties over %zu states (max relative error: raw, beyond fixed-point resolution)\n", r.states);
        auto show = [](const char* name, const FieldDiff& d) {
            std::printf("  %-18s %.6Le  %.6Le\n", name, d.relative, d.beyond_ulp);
        };
        show("add additivity", r.add_additivity);
        show("remove additivity", r.remove_additivity);
        show("add then remove", r.add_remove);
        show("remove then add", r.remove_add);
        const bool ok = r.worst() < a.tolerance;
        std::printf("%s (tolerance %.1e)\n", ok ? "ok" : "VIOLATION", a.tolerance);
        if (!ok) rc = kInvariant;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAMM betting-pool lab: quotes, simulations and probes"};
    app.footer(kColumnsHelp);
    app.require_subcommand(1);

    QuoteArgs qa;
    auto* quote = app.add_subcommand("quote", "Quote odds for a wager against a freshly funded pool");
    quote->add_option("--k", qa.k, "Number of outcomes")->check(CLI::Range(2, 64));
    quote->add_option("--probs", qa.probs, "Fair prices, comma-separated (default uniform)");
    quote->add_option("--funding", qa.funding, "Initial pool funding")->capture_default_str();
    quote->add_option("--outcome", qa.outcome, "Outcome to back, 1-based")->required();
    quote->add_option("--wager", qa.wager, "Wager in collateral")->required();
    quote->add_option("--fee-rate", qa.fee_rate, "Fee rate charged on top of the wager")->capture_default_str();
    quote->add_option("--engine", qa.engine, "uamm or cpmm")->check(CLI::IsMember({"uamm", "cpmm"}))->capture_default_str();
    quote->add_option("--market-id", qa.market_id, "Market id in the CSV row")->capture_default_str();
    quote->add_flag("--csv", qa.csv_only, "Print only the CSV header and row");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Run a seeded experiment and write CSV outputs");
    sim->add_option("--config", sa.config, "key = value config file")->check(CLI::ExistingFile);
    sim->add_option("--mode", sa.mode, "single | multi | full | sweep")
        ->check(CLI::IsMember({"single", "multi", "full", "sweep"}))
        ->capture_default_str();
    sim->add_option("--engine", sa.engine, "Override the config engine")->check(CLI::IsMember({"uamm", "cpmm"}));
    sim->add_option("--seed", sa.seed, "Override the config seed");
    sim->add_option("--out", sa.out, "Output directory")->capture_default_str();
    sim->add_option("--trials", sa.trials, "Trials in full mode")->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_option("--set", sa.set, "Override a config key, key=value (repeatable)");

    ProbeArgs pa;
    auto* probe = app.add_subcommand("probe", "Branch continuity grid and add/remove property suites");
    probe->add_flag("--continuity", pa.continuity, "Report swap branch boundary gaps");
    probe->add_flag("--properties", pa.properties, "Check additivity and reversibility");
    probe->add_option("--states", pa.states, "Random states per property")->capture_default_str();
    probe->add_option("--seed", pa.seed, "Property suite seed")->capture_default_str();
    probe->add_option("--tolerance", pa.tolerance, "Relative tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*quote) return cmd_quote(qa);
        if (*sim) return cmd_simulate(sa);
        if (*probe) return cmd_probe(pa);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == Errc::invalid_argument ? kUsage : kInvariant;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return kInvariant;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kOk;
}
