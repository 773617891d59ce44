#include "doctest.h"

#include <string>

#include "ubet/sim_config.hpp"

using namespace ubet;

TEST_CASE("parse a config file") {
    SimConfig c = SimConfig::parse(
        "# controlled run\n"
        "k = 2\n"
        "funding = 10000\n"
        "probs = 0.8, 0.2   # favourite first\n"
        "n_bets = 100\n"
        "n_markets = 100\n"
        "side_mode = uniform\n"
        "engine = cpmm\n"
        "seed = 7\n");
    CHECK(c.probs.fixed.size() == 2);
    CHECK(c.probs.fixed[0] == doctest::Approx(0.8));
    CHECK(c.n_bets.fixed == 100);
    CHECK(c.side_mode == SideMode::uniform);
    CHECK(c.engine == EngineKind::cpmm);
    CHECK(c.seed == 7);
    CHECK(c.fee_rate == Amount::from_raw(25'000));
}

TEST_CASE("distribution values") {
    SimConfig c = SimConfig::parse("k = 2-3\nprobs = uniform(0.2, 0.8)\nn_bets = lognormal(2, 2, 1, 40)\n");
    CHECK(c.k.lo == 2);
    CHECK(c.k.hi == 3);
    CHECK(c.probs.uniform);
    CHECK(c.n_bets.lognormal);
    CHECK(c.n_bets.hi == 40);
}

TEST_CASE("bad configs") {
    try {
        SimConfig::parse("fundng = 1\nseeds = 2\nk = 2\n");
        FAIL("expected error");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("fundng") != std::string::npos);
        CHECK(msg.find("seeds") != std::string::npos);
    }
    CHECK_THROWS_AS(SimConfig::parse("k = 2\nk = 3\n"), Error);
    CHECK_THROWS_AS(SimConfig::parse("probs = 0.6, 0.6\n"), Error);
    CHECK_THROWS_AS(SimConfig::parse("k = 3\n"), Error);  // default probs are binary
    CHECK_THROWS_AS(SimConfig::parse("funding = lots\n"), Error);
    CHECK_THROWS_AS(SimConfig::parse("just a line\n"), Error);
}

TEST_CASE("render round trip") {
    SimConfig c = SimConfig::full_defaults();
    c.seed = 99;
    SimConfig back = SimConfig::parse(c.render());
    CHECK(back.render() == c.render());
    SimConfig plain;
    CHECK(SimConfig::parse(plain.render()).render() == plain.render());
}

TEST_CASE("overrides") {
    SimConfig c;
    c.set("rej_mean", "0.03");
    c.set("n_bets", "250");
    CHECK(c.rej_mean == doctest::Approx(0.03));
    CHECK(c.n_bets.fixed == 250);
    CHECK_THROWS_AS(c.set("nope", "1"), Error);
}
