#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ubet {

/// Signed decimal fixed-point value with `Digits` fractional digits stored as
/// an integer count of the smallest unit. Addition and subtraction are exact;
/// conversions from floating point state their rounding mode explicitly.
template <typename Rep, int Digits>
class Fixed {
public:
    using rep = Rep;
    static constexpr int digits = Digits;

    static constexpr Rep scale() noexcept {
        Rep s = 1;
        for (int i = 0; i < Digits; ++i) s *= 10;
        return s;
    }

    constexpr Fixed() noexcept = default;

    static constexpr Fixed from_raw(Rep raw) noexcept {
        Fixed f;
        f.raw_ = raw;
        return f;
    }
    static constexpr Fixed from_units(long long units) noexcept {
        return from_raw(static_cast<Rep>(units) * scale());
    }

    // Rounding conversions from a real value expressed in whole units.
    static Fixed floor(long double v);
    static Fixed nearest(long double v);

    /// Parses "123", "-4.5", "0.000001". More than `Digits` fractional digits
    /// is an error rather than a silent truncation.
    static Fixed parse(std::string_view text);

    constexpr Rep raw() const noexcept { return raw_; }
    long double to_real() const noexcept {
        return static_cast<long double>(raw_) / static_cast<long double>(scale());
    }
    double to_double() const noexcept { return static_cast<double>(to_real()); }

    /// Always prints exactly `Digits` fractional digits.
    std::string str() const;

    constexpr bool is_zero() const noexcept { return raw_ == 0; }
    constexpr bool is_negative() const noexcept { return raw_ < 0; }

    constexpr Fixed operator-() const noexcept { return from_raw(-raw_); }
    constexpr Fixed& operator+=(Fixed o) noexcept {
        raw_ += o.raw_;
        return *this;
    }
    constexpr Fixed& operator-=(Fixed o) noexcept {
        raw_ -= o.raw_;
        return *this;
    }
    friend constexpr Fixed operator+(Fixed a, Fixed b) noexcept { return a += b; }
    friend constexpr Fixed operator-(Fixed a, Fixed b) noexcept { return a -= b; }

    friend constexpr auto operator<=>(Fixed, Fixed) noexcept = default;
    friend constexpr bool operator==(Fixed, Fixed) noexcept = default;

private:
    Rep raw_ = 0;
};

/// Collateral and conditional-token balances: 6 fractional digits.
using Amount = Fixed<std::int64_t, 6>;

/// LP share balances. Shares are a pool-internal unit, so they carry more
/// precision than collateral to keep proportional share math tight.
using Shares = Fixed<__int128, 18>;

/// `value * rate` where both are fixed point, rounded toward zero. Exact
/// whenever the true product is representable (e.g. cent wagers times a
/// fee rate with at most four decimals).
Amount mul(Amount value, Amount rate);

inline Amount operator""_amt(const char* text, std::size_t n) {
    return Amount::parse(std::string_view(text, n));
}

}  // namespace ubet
