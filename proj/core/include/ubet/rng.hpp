#pragma once

#include <cstdint>
#include <random>

namespace ubet {

enum class Stream : std::uint64_t {
    params = 1,  // per-market hyperparameters (outcome count, probabilities, bet count)
    bets = 2,    // bettor draws: wager, side, rejection threshold
    winner = 3,  // oracle result
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent generator for (master seed, market index, stream). Markets
/// can be simulated in any order or in parallel with identical draws.
std::mt19937_64 substream(std::uint64_t master, std::uint64_t market, Stream stream);

}  // namespace ubet
