#include "doctest.h"

#include "ubet/ledger.hpp"

using namespace ubet;

namespace {

Ledger funded(Amount d = Amount::from_units(100)) {
    Ledger l(MarketSpec{});
    l.deposit("a", d);
    return l;
}

Amount tok(const Ledger& l, const char* who, std::size_t k) { return l.balance(who, TokenId::outcome(k)); }
Amount cash(const Ledger& l, const char* who) { return l.balance(who, TokenId::collateral()); }

}  // namespace

TEST_CASE("mint issues one of every outcome") {
    Ledger l = funded();
    l.mint("a", Amount::from_units(10));
    CHECK(tok(l, "a", 0) == Amount::from_units(10));
    CHECK(tok(l, "a", 1) == Amount::from_units(10));
    CHECK(l.locked() == Amount::from_units(10));
    CHECK(cash(l, "a") == Amount::from_units(90));
}

TEST_CASE("mint zero leaves state untouched") {
    Ledger l = funded();
    auto before = l.snapshot_fields();
    l.mint("a", Amount{});
    CHECK(l.snapshot_fields() == before);
}

TEST_CASE("mint is additive") {
    Ledger x = funded(), y = funded();
    x.mint("a", "7.5"_amt);
    x.mint("a", "2.5"_amt);
    y.mint("a", Amount::from_units(10));
    CHECK(x.snapshot_fields() == y.snapshot_fields());
}

TEST_CASE("mint beyond wallet") {
    Ledger l = funded();
    try {
        l.mint("a", Amount::from_units(101));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_funds);
    }
}

TEST_CASE("merge round trip") {
    Ledger l = funded();
    auto before = l.snapshot_fields();
    l.mint("a", Amount::from_units(10));
    l.merge("a", Amount::from_units(10));
    CHECK(l.locked().is_zero());
    CHECK(cash(l, "a") == Amount::from_units(100));
    CHECK(tok(l, "a", 0).is_zero());
    (void)before;
}

TEST_CASE("merge is limited by the smallest holding") {
    Ledger l = funded();
    l.mint("a", Amount::from_units(10));
    // move 6 units of outcome 2 away to get holdings (10, 4)
    l.debit("a", TokenId::outcome(1), Amount::from_units(6));
    l.credit("b", TokenId::outcome(1), Amount::from_units(6));
    Amount cash0 = cash(l, "a");
    l.merge("a", Amount::from_units(4));
    CHECK(tok(l, "a", 0) == Amount::from_units(6));
    CHECK(tok(l, "a", 1).is_zero());
    CHECK(cash(l, "a") - cash0 == Amount::from_units(4));
    CHECK_THROWS_AS(l.merge("a", Amount::from_units(1)), Error);
}

TEST_CASE("resolution lifecycle") {
    Ledger l = funded();
    l.mint("a", "19.99"_amt);
    l.debit("a", TokenId::outcome(1), "19.99"_amt);
    l.credit("b", TokenId::outcome(1), "19.99"_amt);

    CHECK_THROWS_AS(l.resolve("oracle", 0), Error);  // still open
    l.close_betting();
    auto before = l.snapshot_fields();
    try {
        l.resolve("mallory", 0);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unauthorized);
    }
    CHECK(l.snapshot_fields() == before);

    l.resolve("oracle", 0);
    CHECK(l.winner() == 0u);
    try {
        l.resolve("oracle", 1);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::already_resolved);
    }

    Amount c0 = cash(l, "a");
    CHECK(l.redeem("a") == "19.99"_amt);
    CHECK(cash(l, "a") - c0 == "19.99"_amt);
    CHECK(l.redeem("b").is_zero());
    CHECK(tok(l, "b", 1).is_zero());
    CHECK(l.locked().is_zero());
}

TEST_CASE("operations after close") {
    Ledger l = funded();
    l.close_betting();
    CHECK_THROWS_AS(l.mint("a", Amount::from_units(1)), Error);
    CHECK_THROWS_AS(l.redeem("a"), Error);
}

TEST_CASE("unknown outcome") {
    Ledger l = funded();
    l.close_betting();
    CHECK_THROWS_AS(l.resolve("oracle", 2), Error);
}

TEST_CASE("snapshot text is sorted key=value lines") {
    Ledger l = funded();
    l.mint("a", Amount::from_units(3));
    std::string text = render_snapshot(l.snapshot_fields());
    std::string prev;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        REQUIRE(nl != std::string::npos);
        std::string line = text.substr(pos, nl - pos);
        CHECK(line.find('=') != std::string::npos);
        std::string key = line.substr(0, line.find('='));
        CHECK(prev < key);
        prev = key;
        pos = nl + 1;
    }
    Ledger m = funded();
    m.mint("a", Amount::from_units(3));
    CHECK(render_snapshot(m.snapshot_fields()) == text);
}
