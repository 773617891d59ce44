#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run lab(const std::string& args) {
    Run r;
    std::string cmd = std::string(UAMM_LAB_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST_CASE("quote prints the worked example") {
    Run r = lab("quote --k 2 --probs 0.5,0.5 --funding 10000 --outcome 1 --wager 10");
    CHECK(r.status == 0);
    CHECK(r.out.find("19.990010") != std::string::npos);
    CHECK(r.out.find("engine,market_id,outcome,wager,odd,implied_price,slippage,fee") != std::string::npos);
}

TEST_CASE("quote with a zero wager") {
    Run r = lab("quote --k 2 --probs 0.5,0.5 --funding 10000 --outcome 2 --wager 0");
    CHECK(r.status == 0);
    CHECK(r.out.find("uamm,m0,2,0.000000,0.000000,") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(lab("quote --k 2 --probs 0.7,0.7 --funding 10000 --outcome 1 --wager 5").status == 1);
    CHECK(lab("quote --k 2 --probs 0.5,0.5 --funding 10000 --outcome 3 --wager 5").status == 1);
    CHECK(lab("nonsense").status == 1);
}
