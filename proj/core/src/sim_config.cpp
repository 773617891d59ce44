#include "ubet/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ubet/error.hpp"
#include "ubet/fair_prices.hpp"

namespace ubet {

const std::vector<std::string> kConfigKeys = {
    "k",        "funding",   "probs",     "n_bets",  "n_markets", "wager_mu", "wager_sigma",
    "side_mode", "rej_mean", "rej_std",   "fee_rate", "seed",     "engine",
};

const char* to_string(SideMode m) noexcept { return m == SideMode::true_prob ? "true-prob" : "uniform"; }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why = {}) {
    std::string msg = "invalid value for '" + std::string(key) + "': '" + std::string(value) + "'";
    if (!why.empty()) msg += " (" + std::string(why) + ")";
    throw Error(Errc::invalid_argument, msg);
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) bad(key, v);
    return out;
}

double parse_double(std::string_view key, std::string_view v) {
    std::string s(v);
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) bad(key, v);
    return d;
}

/// Splits "name(a,b,...)" into its comma-separated arguments.
bool call_args(std::string_view v, std::string_view name, std::vector<std::string_view>& args) {
    if (v.substr(0, name.size()) != name) return false;
    v.remove_prefix(name.size());
    v = trim(v);
    if (v.size() < 2 || v.front() != '(' || v.back() != ')') return false;
    v = v.substr(1, v.size() - 2);
    args.clear();
    while (true) {
        auto comma = v.find(',');
        args.push_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return true;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string OutcomeCountSpec::str() const {
    return fixed() ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

std::string ProbSpec::str() const {
    if (uniform) return "uniform(" + num(static_cast<double>(lo)) + "," + num(static_cast<double>(hi)) + ")";
    std::string out;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (i) out += ',';
        out += num(static_cast<double>(fixed[i]));
    }
    return out;
}

std::string BetCountSpec::str() const {
    if (!lognormal) return std::to_string(fixed);
    return "lognormal(" + num(mu) + "," + num(sigma) + "," + std::to_string(lo) + "," + std::to_string(hi) + ")";
}

SimConfig SimConfig::full_defaults() {
    SimConfig c;
    c.k = {2, 3};
    c.probs.uniform = true;
    c.probs.lo = 0.2L;
    c.probs.hi = 0.8L;
    c.n_bets.lognormal = true;
    c.n_bets.mu = 2.0;
    c.n_bets.sigma = 2.0;
    c.n_bets.lo = 1;
    c.n_bets.hi = 40;
    return c;
}

void SimConfig::set(std::string_view key, std::string_view value) {
    const std::string_view v = trim(value);
    if (key == "k") {
        auto dash = v.find('-');
        if (dash == std::string_view::npos) {
            k.lo = k.hi = parse_uint(key, v);
        } else {
            k.lo = parse_uint(key, trim(v.substr(0, dash)));
            k.hi = parse_uint(key, trim(v.substr(dash + 1)));
        }
    } else if (key == "funding") {
        try {
            funding = Amount::parse(v);
        } catch (const std::invalid_argument&) {
            bad(key, v);
        }
    } else if (key == "probs") {
        std::vector<std::string_view> args;
        if (call_args(v, "uniform", args)) {
            if (args.size() != 2) bad(key, v, "uniform takes (lo,hi)");
            probs.uniform = true;
            probs.lo = parse_double(key, args[0]);
            probs.hi = parse_double(key, args[1]);
        } else {
            probs.uniform = false;
            probs.fixed.clear();
            std::string_view rest = v;
            while (true) {
                auto comma = rest.find(',');
                probs.fixed.push_back(parse_double(key, trim(rest.substr(0, comma))));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
        }
    } else if (key == "n_bets") {
        std::vector<std::string_view> args;
        if (call_args(v, "lognormal", args)) {
            if (args.size() != 2 && args.size() != 4) bad(key, v, "lognormal takes (mu,sigma[,min,max])");
            n_bets.lognormal = true;
            n_bets.mu = parse_double(key, args[0]);
            n_bets.sigma = parse_double(key, args[1]);
            n_bets.lo = args.size() == 4 ? parse_uint(key, args[2]) : 1;
            n_bets.hi = args.size() == 4 ? parse_uint(key, args[3]) : 40;
        } else {
            n_bets.lognormal = false;
            n_bets.fixed = parse_uint(key, v);
        }
    } else if (key == "n_markets") {
        n_markets = parse_uint(key, v);
    } else if (key == "wager_mu") {
        wager_mu = parse_double(key, v);
    } else if (key == "wager_sigma") {
        wager_sigma = parse_double(key, v);
    } else if (key == "side_mode") {
        if (v == "true-prob" || v == "true_prob") {
            side_mode = SideMode::true_prob;
        } else if (v == "uniform") {
            side_mode = SideMode::uniform;
        } else {
            bad(key, v, "expected true-prob or uniform");
        }
    } else if (key == "rej_mean") {
        rej_mean = parse_double(key, v);
    } else if (key == "rej_std") {
        rej_std = parse_double(key, v);
    } else if (key == "fee_rate") {
        try {
            fee_rate = Amount::parse(v);
        } catch (const std::invalid_argument&) {
            bad(key, v);
        }
    } else if (key == "seed") {
        seed = parse_uint(key, v);
    } else if (key == "engine") {
        try {
            engine = parse_engine(v);
        } catch (const Error&) {
            bad(key, v, "expected uamm or cpmm");
        }
    } else {
        throw Error(Errc::invalid_argument, "unknown config key '" + std::string(key) + "'");
    }
}

SimConfig SimConfig::parse(std::string_view text, SimConfig base) {
    std::vector<std::string> unknown;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = line;
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::invalid_argument, "line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(s.substr(0, eq)));
        std::string_view value = trim(s.substr(eq + 1));
        bool known = false;
        for (const auto& k : kConfigKeys) known = known || k == key;
        if (!known) {
            unknown.push_back(key);
            continue;
        }
        if (!seen.insert(key).second) throw Error(Errc::invalid_argument, "duplicate config key '" + key + "'");
        base.set(key, value);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw Error(Errc::invalid_argument, msg);
    }
    base.validate();
    return base;
}

SimConfig SimConfig::load(const std::string& path, SimConfig base) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::invalid_argument, "cannot read config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), std::move(base));
}

SimConfig SimConfig::parse(std::string_view text) { return parse(text, SimConfig{}); }
SimConfig SimConfig::load(const std::string& path) { return load(path, SimConfig{}); }

void SimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(Errc::invalid_argument, msg); };
    if (k.lo < 2 || k.hi < k.lo) fail("k must be >= 2 (or a range lo-hi with lo <= hi)");
    if (funding <= Amount{}) fail("funding must be positive");
    if (probs.uniform) {
        if (!(probs.lo > 0 && probs.lo < probs.hi && probs.hi < 1)) fail("probs uniform bounds must satisfy 0 < lo < hi < 1");
    } else {
        if (!k.fixed()) fail("a fixed probs vector needs a fixed k");
        if (probs.fixed.size() != k.lo) fail("probs has " + std::to_string(probs.fixed.size()) + " entries but k = " + k.str());
        FairPrices check(probs.fixed);
        (void)check;
    }
    if (n_bets.lognormal) {
        if (n_bets.sigma < 0 || n_bets.lo > n_bets.hi) fail("n_bets lognormal needs sigma >= 0 and min <= max");
    }
    if (n_markets < 1) fail("n_markets must be >= 1");
    if (wager_sigma < 0) fail("wager_sigma must be >= 0");
    if (rej_std < 0) fail("rej_std must be >= 0");
    if (fee_rate.is_negative() || fee_rate >= Amount::from_units(1)) fail("fee_rate must lie in [0, 1)");
}

std::string SimConfig::render() const {
    std::string out;
    auto line = [&](const char* key, const std::string& value) { out += std::string(key) + " = " + value + "\n"; };
    line("k", k.str());
    line("funding", funding.str());
    line("probs", probs.str());
    line("n_bets", n_bets.str());
    line("n_markets", std::to_string(n_markets));
    line("wager_mu", num(wager_mu));
    line("wager_sigma", num(wager_sigma));
    line("side_mode", to_string(side_mode));
    line("rej_mean", num(rej_mean));
    line("rej_std", num(rej_std));
    line("fee_rate", fee_rate.str());
    line("seed", std::to_string(seed));
    line("engine", to_string(engine));
    return out;
}

}  // namespace ubet
