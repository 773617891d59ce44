#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ubet {

/// Outcome probabilities used as the pricing reference. Each entry lies in
/// (0, 1) and the entries sum to exactly 1 in left-to-right summation.
class FairPrices {
public:
    /// Accepts vectors whose sum is within 1e-12 of one, then renormalizes.
    explicit FairPrices(std::vector<long double> probs);
    static FairPrices uniform(std::size_t k);
    /// Parses "0.25,0.5,0.25".
    static FairPrices parse(std::string_view text);

    std::size_t size() const noexcept { return p_.size(); }
    long double operator[](std::size_t k) const { return p_.at(k); }
    std::span<const long double> values() const noexcept { return p_; }
    std::string str() const;

private:
    std::vector<long double> p_;
};

}  // namespace ubet
