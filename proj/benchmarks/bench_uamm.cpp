#include <benchmark/benchmark.h>

#include "ubet/market.hpp"
#include "ubet/sim.hpp"
#include "ubet/uamm.hpp"

using namespace ubet;

namespace {

Market funded(EngineKind engine) {
    Market m(MarketSpec{}, FairPrices({0.5L, 0.5L}), engine);
    m.ledger().deposit("lp", Amount::from_units(30'000));
    m.fund("lp", Amount::from_units(10'000));
    return m;
}

void BM_Swap(benchmark::State& state) {
    long double r = 9'000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(uamm_swap(45, r, 10'000, 0.5L, 0.5L));
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_Swap);

void BM_Quote(benchmark::State& state) {
    Market m = funded(static_cast<EngineKind>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(m.quote(0, 45));
}
BENCHMARK(BM_Quote)->Arg(0)->Arg(1);

void BM_Buy(benchmark::State& state) {
    Market m = funded(EngineKind::uamm);
    m.ledger().deposit("b", Amount::from_units(1'000'000'000));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.buy("b", i++ & 1, Amount::from_units(5)));
    }
}
BENCHMARK(BM_Buy);

void BM_SingleMarket(benchmark::State& state) {
    SimConfig c;
    c.n_bets.fixed = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_single_market(c, 42, RunOptions{false, false, false}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SingleMarket)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
