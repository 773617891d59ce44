#include "doctest.h"

#include <cmath>

#include "ubet/probe.hpp"

using namespace ubet;

TEST_CASE("continuity of the swap branches") {
    auto rows = continuity_grid({0.5L, 1.0L, 4.0L});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].max_rel_gap_surplus < 1e-12L);
    for (const auto& r : rows) CHECK(r.max_gap_deficit < 1e-9L);
    // away from rho = 1 the boundary branch jumps by |rho - 1| relative
    CHECK(rows[0].max_rel_gap_surplus == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rows[2].max_rel_gap_surplus == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("field comparison") {
    std::map<std::string, std::string> a{{"x", "10.000000"}, {"name", "m0"}};
    std::map<std::string, std::string> b{{"x", "10.000001"}, {"name", "m0"}};
    std::map<std::string, std::string> c{{"x", "10.000100"}, {"name", "m0"}};
    CHECK(diff_fields(a, a).relative == 0);
    CHECK(diff_fields(a, b).beyond_ulp == 0);
    CHECK(diff_fields(a, b).relative > 0);
    CHECK(diff_fields(a, c).beyond_ulp > 0);
}

TEST_CASE("liquidity property suite") {
    PropertyReport r = run_property_suite(7, 200);
    CHECK(r.states == 200);
    CHECK(r.worst() <= 1e-9L);
    CHECK(r.worst_raw() < 1e-6L);
}
