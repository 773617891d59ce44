#include "ubet/fair_prices.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ubet/error.hpp"

namespace ubet {

FairPrices::FairPrices(std::vector<long double> probs) : p_(std::move(probs)) {
    if (p_.size() < 2) throw Error(Errc::invalid_argument, "need at least two fair prices");
    long double sum = 0;
    for (long double f : p_) {
        if (!(f > 0 && f < 1)) throw Error(Errc::invalid_argument, "fair price outside (0, 1)");
        sum += f;
    }
    if (std::fabs(sum - 1.0L) > 1e-12L) {
        throw Error(Errc::invalid_argument, "fair prices sum to " + std::to_string(static_cast<double>(sum)));
    }
    // The last entry absorbs the residual so the running sum lands on 1.
    long double head = 0;
    for (std::size_t k = 0; k + 1 < p_.size(); ++k) {
        p_[k] /= sum;
        head += p_[k];
    }
    p_.back() = 1.0L - head;
    if (!(p_.back() > 0)) throw Error(Errc::invalid_argument, "fair prices degenerate after normalization");
}

FairPrices FairPrices::uniform(std::size_t k) {
    return FairPrices(std::vector<long double>(k, 1.0L / static_cast<long double>(k)));
}

FairPrices FairPrices::parse(std::string_view text) {
    std::vector<long double> v;
    std::string buf(text);
    std::size_t pos = 0;
    while (pos <= buf.size()) {
        std::size_t comma = buf.find(',', pos);
        std::string item = buf.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        long double f = std::strtold(item.c_str(), &end);
        while (end && *end == ' ') ++end;
        if (item.empty() || end == item.c_str() || (end && *end != '\0')) {
            throw Error(Errc::invalid_argument, "malformed probability list '" + buf + "'");
        }
        v.push_back(f);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return FairPrices(std::move(v));
}

std::string FairPrices::str() const {
    std::string out;
    char buf[32];
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (k) out += ',';
        std::snprintf(buf, sizeof buf, "%.6Lg", p_[k]);
        out += buf;
    }
    return out;
}

}  // namespace ubet
