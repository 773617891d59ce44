#include "doctest.h"

#include <cmath>

#include "ubet/cpmm.hpp"
#include "ubet/market.hpp"

using namespace ubet;

TEST_CASE("constant product swap") {
    CpmmPair p{10'000, 10'000};
    long double out = cpmm_swap(100, p);
    CHECK(std::fabs(out - (10'000.0L - 1e8L / 10'100.0L)) < 1e-9L);
    CHECK(Amount::nearest(out).str() == "99.009901");
    CHECK(p.invariant() == doctest::Approx(1e8).epsilon(1e-15));

    CpmmPair q{10'000, 10'000};
    CHECK(cpmm_swap(1e-9L, q) < 1e-8L);
    CpmmPair z{10'000, 10'000};
    CHECK(cpmm_swap(0, z) == 0);
    CpmmPair big{10'000, 10'000};
    CHECK(cpmm_swap(1e12L, big) < 10'000);
}

TEST_CASE("seeded pool prices match fair prices") {
    FairPrices f({0.3L, 0.7L});
    Market m(MarketSpec{}, f, EngineKind::cpmm);
    Amount funding = Amount::from_units(10'000);
    m.ledger().deposit("lp", Amount::from_units(20'000));
    m.fund("lp", funding);
    auto c = m.pool().real().combined();
    // claims worth exactly the funding at fair prices
    CHECK(c[0] == doctest::Approx(10'000 / (2 * 0.3)).epsilon(1e-9));
    CHECK(c[1] == doctest::Approx(10'000 / (2 * 0.7)).epsilon(1e-9));
    CHECK(m.spot_price(0) == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(m.spot_price(1) == doctest::Approx(0.7).epsilon(1e-3));
    CHECK(m.conserved());
}

TEST_CASE("fair coin odds less product slippage") {
    Market m(MarketSpec{}, FairPrices({0.5L, 0.5L}), EngineKind::cpmm);
    m.ledger().deposit("lp", Amount::from_units(2'000'000));
    m.fund("lp", Amount::from_units(1'000'000));
    Quote q = m.quote(0, 10);
    // claims are 1e6 each: odd = 10 + 1e6·10 / (1e6 + 10)
    CHECK(std::fabs(q.odd - (10 + 1e7L / 1'000'010.0L)) < 1e-9L);
    CHECK(q.odd < 20);
    CHECK(m.quote(0, 0).odd == 0);

    m.ledger().deposit("b", Amount::from_units(100));
    BuyResult r = m.buy("b", 0, Amount::from_units(10));
    CHECK(std::fabs(r.odd.to_real() - q.odd) <= 1e-6L);
    CHECK(m.conserved());
    CHECK_THROWS_AS(m.add_liquidity("lp", Amount::from_units(1)), Error);
}
