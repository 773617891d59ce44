#include "ubet/amount.hpp"

#include <algorithm>
#include <cmath>

namespace ubet {

namespace {

template <typename Rep>
std::string rep_to_string(Rep v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string out;
    // Work on negative values so the minimum representable value is safe.
    Rep n = neg ? v : -v;
    while (n != 0) {
        out.push_back(static_cast<char>('0' - static_cast<int>(n % 10)));
        n /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

template <typename Rep, int Digits>
Fixed<Rep, Digits> Fixed<Rep, Digits>::floor(long double v) {
    if (!std::isfinite(v)) throw std::domain_error("fixed-point conversion of non-finite value");
    return from_raw(static_cast<Rep>(std::floor(v * static_cast<long double>(scale()))));
}

template <typename Rep, int Digits>
Fixed<Rep, Digits> Fixed<Rep, Digits>::nearest(long double v) {
    if (!std::isfinite(v)) throw std::domain_error("fixed-point conversion of non-finite value");
    return from_raw(static_cast<Rep>(std::round(v * static_cast<long double>(scale()))));
}

template <typename Rep, int Digits>
Fixed<Rep, Digits> Fixed<Rep, Digits>::parse(std::string_view text) {
    auto fail = [&]() -> Fixed {
        throw std::invalid_argument("malformed decimal amount: '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return fail();
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    Rep whole = 0;
    Rep frac = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_dot) return fail();
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') return fail();
        seen_digit = true;
        if (seen_dot) {
            if (++frac_digits > Digits) {
                throw std::invalid_argument("too many fractional digits in '" + std::string(text) + "'");
            }
            frac = frac * 10 + (c - '0');
        } else {
            whole = whole * 10 + (c - '0');
        }
    }
    if (!seen_digit) return fail();
    for (int i = frac_digits; i < Digits; ++i) frac *= 10;
    Rep raw = whole * scale() + frac;
    return from_raw(neg ? -raw : raw);
}

template <typename Rep, int Digits>
std::string Fixed<Rep, Digits>::str() const {
    Rep whole = raw_ / scale();
    Rep frac = raw_ % scale();
    std::string out;
    if (raw_ < 0) {
        out.push_back('-');
        whole = -whole;
        frac = -frac;
    }
    out += rep_to_string(whole);
    std::string f = rep_to_string(frac);
    out.push_back('.');
    out.append(static_cast<std::size_t>(Digits) - f.size(), '0');
    out += f;
    return out;
}

template class Fixed<std::int64_t, 6>;
template class Fixed<__int128, 18>;

Amount mul(Amount value, Amount rate) {
    __int128 p = static_cast<__int128>(value.raw()) * rate.raw();
    return Amount::from_raw(static_cast<std::int64_t>(p / Amount::scale()));
}

}  // namespace ubet
