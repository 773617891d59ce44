#include "ubet/rng.hpp"

namespace ubet {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t master, std::uint64_t market, Stream stream) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ splitmix64(market));
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace ubet
