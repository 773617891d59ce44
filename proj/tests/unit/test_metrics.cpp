#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "ubet/error.hpp"
#include "ubet/metrics.hpp"

using namespace ubet;

namespace {

long double ev(std::vector<long double> r, std::vector<long double> f) { return expected_value(r, f); }

}  // namespace

TEST_CASE("expected value") {
    CHECK(ev({500, 500}, {0.5L, 0.5L}) == doctest::Approx(0.0));
    CHECK(ev({100, 0}, {0.5L, 0.5L}) == doctest::Approx(0.0));
    // the formula collapses to -(K - 2)·Z, so equal pools at 80/20 give 0 too
    CHECK(ev({500, 500}, {0.8L, 0.2L}) == doctest::Approx(0.0));
    CHECK(ev({10, 20, 30}, {0.2L, 0.3L, 0.5L}) == doctest::Approx(-60.0));
    CHECK_THROWS_AS(ev({1, 2}, {1.0L}), Error);
}

TEST_CASE("impermanent and permanent pnl") {
    MarketOutcome m{{0.5L, 0.5L}, {100, 100}, {110, 90}, 0};
    CHECK(impermanent_pnl(m) == doctest::Approx(0.0));
    CHECK(permanent_pnl(m) == doctest::Approx(10.0));

    MarketOutcome still{{0.3L, 0.7L}, {100, 100}, {100, 100}, 1};
    CHECK(impermanent_pnl(still) == 0);
    CHECK(permanent_pnl(still) == 0);

    MarketOutcome plus5{{0.9L, 0.1L}, {50, 50}, {55, 50}, 0};
    CHECK(permanent_pnl(plus5) == doctest::Approx(5.0));

    std::vector<MarketOutcome> ms{m, still, plus5};
    CHECK(epp(ms).mean == doctest::Approx(5.0));
    CHECK(total_pnl(ms) == doctest::Approx(15.0));
    CHECK(eip(ms).mean == doctest::Approx(4.5 / 3));

    std::vector<MarketOutcome> bad{MarketOutcome{{0.5L, 0.5L}, {1, 1}, {1, 1}, 7}};
    CHECK_THROWS_AS(epp(bad), Error);
}

TEST_CASE("eip is the winner expectation of epp") {
    std::mt19937_64 rng(3);
    std::normal_distribution<long double> step(0, 40);
    std::vector<MarketOutcome> trajectories;
    for (int n = 0; n < 50; ++n) {
        MarketOutcome m{{0.7L, 0.2L, 0.1L}, {1000, 1000, 1000}, {}, 0};
        for (long double x : m.initial) m.final.push_back(x + step(rng));
        trajectories.push_back(m);
    }
    long double expected = eip(trajectories).mean;

    std::discrete_distribution<std::size_t> winner({0.7, 0.2, 0.1});
    std::vector<long double> samples;
    for (int r = 0; r < 10'000; ++r) {
        for (auto& m : trajectories) m.winner = winner(rng);
        samples.push_back(epp(trajectories).mean);
    }
    MeanStd s = mean_std(samples);
    CHECK(std::fabs(s.mean - expected) < 3 * s.stderr_mean());
}

TEST_CASE("summary statistics") {
    std::vector<long double> xs{1, 2, 3, 4};
    MeanStd s = mean_std(xs);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3)));
    CHECK(s.n == 4);
    std::vector<long double> one{7};
    CHECK(mean_std(one).std == 0);

    std::vector<long double> over{0.0L, 0.02L, 0.04L};
    CHECK(vigorish(over) == doctest::Approx(0.02));
    CHECK_THROWS_AS(vigorish(std::vector<long double>{}), Error);
}
