#include "doctest.h"

#include "ubet/amount.hpp"
#include <stdexcept>

using namespace ubet;

TEST_CASE("amount parse and print") {
    CHECK(Amount::parse("19.99").raw() == 19'990'000);
    CHECK(Amount::parse("0.000001").raw() == 1);
    CHECK(Amount::parse("-3.5").raw() == -3'500'000);
    CHECK(Amount::parse("10000").str() == "10000.000000");
    CHECK("9.990010"_amt.str() == "9.990010");
    CHECK_THROWS_AS(Amount::parse("1.0000001"), std::invalid_argument);
    CHECK_THROWS_AS(Amount::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Amount::parse(""), std::invalid_argument);
}

TEST_CASE("amount rounding") {
    CHECK(Amount::floor(9.9900099L).raw() == 9'990'009);
    CHECK(Amount::nearest(9.9900099L).raw() == 9'990'010);
    CHECK(Amount::floor(2.0L).raw() == 2'000'000);
    CHECK(Amount::nearest(0.0000004L).raw() == 0);
}

TEST_CASE("amount arithmetic") {
    Amount a = "7.5"_amt, b = "2.5"_amt;
    CHECK(a + b == Amount::from_units(10));
    CHECK(a - b == Amount::from_units(5));
    CHECK(mul("45.67"_amt, "0.025"_amt).raw() == 1'141'750);
    CHECK(Shares::from_units(1).raw() == Shares::scale());
}
